#pragma once

#include <string>
#include <vector>

#include "extremal/table.hpp"

namespace extremal {

struct NonFreeResidual : Error {
  using Error::Error;
};

struct CertStep {
  VarId var;
  std::string var_name;
  FPoly expr;          // the new r_y(c)
  std::string source;  // extremality(y,c) | jacobi(a,b,c) | harvest(len) | initial rule id
};

struct Certificate {
  std::vector<CertStep> steps;        // final MinimizeFSet pass
  std::vector<CertStep> interleaved;  // eliminations performed between table stages
  bool free = false;
  int residual_count = 0;
  std::vector<std::string> residual;  // residual relation generators, serialized
};

struct MinimizeOptions {
  // stream every generator-headed triple even after F empties (the early stop
  // is justified by 0 being a point of X, but --exhaustive turns it off)
  bool exhaustive = false;
  long triple_budget = -1;  // optional cap; capped runs cannot certify freeness
};

/* Substitution pass run between table stages: harvested rank-deficiency
   relations, extremality of pairs that just became computable, and Jacobi
   triples with two generator arguments. Returns eliminations performed. */
int interleave_pass(FSetState& st, MultTable& T, int completed_len,
                    std::vector<BasisVec>&& harvested, std::vector<CertStep>& log);

/* Algorithm MinimizeFSet: collect extremality and Jacobi relations, eliminate
   linearly occurring variables (largest pair first) until fixpoint. The free
   flag is set iff every residual relation is identically zero. */
Certificate minimize_fset(FSetState& st, MultTable& T, const MinimizeOptions& opts = {});

/* Apply the final-pass substitutions to a copy of the pre-minimization table. */
MultTable replay_certificate(const Certificate& cert, const MultTable& pre, const FSetState& st);

std::string certify_affine_report(const FSetState& st, const Certificate& cert);

}  // namespace extremal
