#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klhc/decomp.hpp"
#include "klhc/graph.hpp"
#include "klhc/klbase.hpp"
#include "klhc/poly.hpp"

namespace klhc {

// The two halves of the derivative identity for an interval [x, y] with a
// hypercube decomposition J: the crown sum over the cluster at x,
//
//   Qtilde = sum over nonempty I in E_x of (q-1)^(|I|-1) P_{theta(I), y}
//
// reversed into Q, and the inductive piece I = sum over v in J \ {x} of
// gamma_v * dP_{x,v} with gamma read off a unitriangular expansion of the
// column restrictions. The check asserts dP_{x,y} = I + Q.

IntPolynomial q_tilde(const BruhatInterval& iv, const HypercubeDecomposition& d,
                      KLTable& t);
// reverse_twist(q_tilde, l(y) - l(x) - 1).
IntPolynomial q_piece(const BruhatInterval& iv, const HypercubeDecomposition& d,
                      KLTable& t);

struct InductiveExpansion {
  std::vector<int> order;             // J \ {x}, longest first, ties by notation
  std::vector<IntPolynomial> gamma;   // aligned with order
  bool nonneg = true;

  const IntPolynomial* gamma_of(int vertex) const {
    for (size_t i = 0; i < order.size(); ++i)
      if (order[i] == vertex) return &gamma[i];
    return nullptr;
  }
};

// Solves r = sum gamma_v b_v where r carries P_{v,y} and b_v carries P_{w,v}
// over the members (x excluded), processing vertices from the top down. The
// solution is verified by resubstitution; a mismatch throws std::logic_error.
InductiveExpansion gamma_expansion(const BruhatInterval& iv,
                                   const HypercubeDecomposition& d, KLTable& t);

IntPolynomial inductive_piece(const BruhatInterval& iv,
                              const HypercubeDecomposition& d, KLTable& t,
                              const InductiveExpansion* pre = nullptr);

struct VerificationRecord {
  Permutation x, y;
  std::optional<Permutation> z;
  IntPolynomial dP, inductive, q;
  bool pass = false;
  bool gamma_nonneg = true;
  bool q_nonneg = true;       // observed, not part of the pass criterion
  std::string error;          // nonempty when the check aborted
};

// Runs both halves and compares; never throws, failures and exceptions are
// returned as data.
VerificationRecord check_formula(const BruhatInterval& iv,
                                 const HypercubeDecomposition& d, KLTable& t);

// One fixed-field JSON line:
// {"x":...,"y":...,"z":...,"dP":[...],"I":[...],"Q":[...],"pass":...,"gamma_nonneg":...}
// Error records replace the polynomial fields with an "error" field.
std::string record_jsonl(const VerificationRecord& r);

}  // namespace klhc
