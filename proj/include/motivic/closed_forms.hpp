#pragma once
#include <functional>
#include <string>
#include <vector>

#include "motivic/ext.hpp"

namespace motivic {

// which tabulated answer to generate
struct CaseDescriptor {
  enum class Kind { ExtE0, ExtE1, ExtL, ExtLL };
  Kind kind = Kind::ExtE1;
  FieldSpec field;
  int k = 0, m = 0;

  // "ExtE0", "ExtE1", "ExtL:m", "ExtLL:k:m"
  static CaseDescriptor parse(const std::string& s, const FieldSpec& field);
  std::string str() const;
};

// c * v_0^a * v_1^b with c a coefficient monomial
using MonoPred = std::function<bool(const Mono& c, int a, int b)>;

// a generator with the set of monomial multiples that are nonzero; the algebra
// presentations used here are monomial, so v_0 and v_1 act by shifting exponents
struct ClassBlock {
  std::string label;
  std::string summand;  // "x", "y", "B", "W"
  Deg3 base;
  MonoPred has;
  // block receiving v_1 * (c v_0^a v_1^b) as c v_0^{a+v1_da} v_1^b when the block itself
  // has no room
  int v1_into = -1;
  int v1_da = 1;
};

// monomial basis of Ext_{E(n)}(unit) for the given field
MonoPred ext_unit_presentation(const FieldSpec& spec, int n);

// blocks of the tabulated answer
std::vector<ClassBlock> closed_form_blocks(const CaseDescriptor& c);
// the blocks as a chart with v_0, v_1 product matrices; B tagged as in tag_torsion
ExtChart closed_form_chart(const CaseDescriptor& c, const Window& win);
ExtChart blocks_chart(const FieldSpec& spec, const std::vector<ClassBlock>& blocks,
                      const Window& win);

// Ext(unit, L(m)) blocks for a given presentation of Ext_{E(0)} and Ext_{E(1)}
std::vector<ClassBlock> lightning_blocks(const FieldSpec& spec, int m, const MonoPred& e0,
                                         const MonoPred& e1);
// Ext(L(k), L(m)) blocks built on a given presentation of Ext_{E(0)} and Ext_{E(1)}
std::vector<ClassBlock> bimodule_blocks(const FieldSpec& spec, int k, int m, const MonoPred& e0,
                                        const MonoPred& e1);

// degreewise comparison of dimensions and of v_0, v_1 ranks; one line per mismatch
std::vector<std::string> compare_charts(const ExtChart& computed, const ExtChart& expected,
                                        bool check_products = true);

}  // namespace motivic
