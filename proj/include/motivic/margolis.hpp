#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motivic/module.hpp"

namespace motivic {

// M/(x)/(y): the F_p-vector space on the A-basis with the constant parts of the
// Q_i-actions. Every coefficient generator has positive connectivity, so killing
// x and y kills the whole augmentation ideal of A.
struct Reduction {
  int p = 2;
  std::vector<Deg> deg;
  std::vector<Matrix> Q;  // Q[i]: row b = image of b under Q_i
  std::string x, y;       // names of the killed generators ("1" when absent)
};
Reduction reduce(const FinModule& M);
Matrix reduce(const FinModule& M, const FinModule& N, const ModuleMap& f);

struct MargolisResult {
  int i = 0;
  std::map<Deg, int> dims;
  // representatives of a basis of the homology, as reduced vectors on the A-basis
  std::vector<std::pair<Deg, Vec>> classes;
  int total() const;
};
// throws std::logic_error when Q_i^2 != 0 on the reduction
MargolisResult margolis_homology(const FinModule& M, int i);

// F_p[x]-freeness of M in a coefficient window (x the square-zero or rho generator)
bool x_free(const FinModule& M, int depth = 4);
bool is_free(const FinModule& M);

struct FreeSplit {
  FinModule core;
  std::vector<Deg> free;  // top degree of each split free summand
};
FreeSplit split_free_summands(const FinModule& M);

// basis of the F_p-space of module maps M -> N
std::vector<ModuleMap> hom_space(const FinModule& M, const FinModule& N);
bool stable_equivalence(const FinModule& M, const FinModule& N, const ModuleMap& f);
// a stable equivalence M -> N among small combinations of a Hom basis, if any
std::optional<ModuleMap> find_stable_equivalence(const FinModule& M, const FinModule& N);

}  // namespace motivic
