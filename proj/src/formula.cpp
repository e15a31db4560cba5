#include "klhc/formula.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace klhc {

IntPolynomial q_tilde(const BruhatInterval& iv, const HypercubeDecomposition& d,
                      KLTable& t) {
  const int base = iv.bottom();
  if (!d.members.test(size_t(base)))
    throw std::invalid_argument("decomposition does not contain the bottom");
  const std::vector<int>& fam = d.cube_sources[size_t(base)];
  const int k = int(fam.size());
  IntPolynomial acc;
  if (k == 0) return acc;

  // (q-1)^j for j = 0 .. k-1
  std::vector<IntPolynomial> pw(static_cast<size_t>(k));
  pw[0] = IntPolynomial::constant(1);
  const IntPolynomial qm1({-1, 1});
  for (int j = 1; j < k; ++j) pw[size_t(j)] = pw[size_t(j) - 1] * qm1;

  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> F;
    for (int e = mask; e;) {
      F.push_back(fam[size_t(__builtin_ctz(unsigned(e)))]);
      e &= e - 1;
    }
    const int crown = theta(iv.g, base, F);
    const IntPolynomial p = t.kl(iv.vertex[size_t(crown)], iv.y);
    acc += p * pw[size_t(__builtin_popcount(unsigned(mask)) - 1)];
  }
  return acc;
}

IntPolynomial q_piece(const BruhatInterval& iv, const HypercubeDecomposition& d,
                      KLTable& t) {
  const int gap = iv.y.length() - iv.x.length();
  return reverse_twist(q_tilde(iv, d, t), gap - 1);
}

InductiveExpansion gamma_expansion(const BruhatInterval& iv,
                                   const HypercubeDecomposition& d, KLTable& t) {
  InductiveExpansion ex;
  d.members.for_each([&](std::size_t v) {
    if (int(v) != iv.bottom()) ex.order.push_back(int(v));
  });
  std::sort(ex.order.begin(), ex.order.end(), [&](int a, int b) {
    const int la = iv.g.level(a), lb = iv.g.level(b);
    if (la != lb) return la > lb;
    return iv.vertex[size_t(a)] < iv.vertex[size_t(b)];
  });

  const size_t n = ex.order.size();
  std::vector<IntPolynomial> r(n);
  for (size_t i = 0; i < n; ++i)
    r[i] = t.kl(iv.vertex[size_t(ex.order[i])], iv.y);

  // b_v is unitriangular against delta_v (P_{v,v} = 1 and P_{w,v} = 0 unless
  // w <= v), so one top-down elimination pass extracts every gamma.
  ex.gamma.resize(n);
  for (size_t i = 0; i < n; ++i) {
    ex.gamma[i] = r[i];
    if (ex.gamma[i].is_zero()) continue;
    for (size_t j = i; j < n; ++j) {
      if (!iv.g.reaches(ex.order[i], ex.order[j])) continue;
      r[j] -= ex.gamma[i] * t.kl(iv.vertex[size_t(ex.order[j])],
                                 iv.vertex[size_t(ex.order[i])]);
    }
  }
  for (size_t j = 0; j < n; ++j)
    if (!r[j].is_zero())
      throw std::logic_error("inductive expansion left a nonzero residue");

  // Resubstitute as an independent check of the elimination.
  std::vector<IntPolynomial> acc(n);
  for (size_t i = 0; i < n; ++i) {
    if (ex.gamma[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!iv.g.reaches(ex.order[i], ex.order[j])) continue;
      acc[j] += ex.gamma[i] * t.kl(iv.vertex[size_t(ex.order[j])],
                                   iv.vertex[size_t(ex.order[i])]);
    }
  }
  for (size_t j = 0; j < n; ++j)
    if (!(acc[j] == t.kl(iv.vertex[size_t(ex.order[j])], iv.y)))
      throw std::logic_error("inductive expansion failed resubstitution");

  ex.nonneg = true;
  for (const IntPolynomial& gmm : ex.gamma)
    if (!gmm.nonneg_coeffs()) ex.nonneg = false;
  return ex;
}

IntPolynomial inductive_piece(const BruhatInterval& iv,
                              const HypercubeDecomposition& d, KLTable& t,
                              const InductiveExpansion* pre) {
  InductiveExpansion local;
  if (!pre) {
    local = gamma_expansion(iv, d, t);
    pre = &local;
  }
  IntPolynomial acc;
  for (size_t i = 0; i < pre->order.size(); ++i) {
    if (pre->gamma[i].is_zero()) continue;
    acc += pre->gamma[i] *
           t.partial_kl(iv.x, iv.vertex[size_t(pre->order[i])]);
  }
  return acc;
}

VerificationRecord check_formula(const BruhatInterval& iv,
                                 const HypercubeDecomposition& d, KLTable& t) {
  VerificationRecord rec;
  rec.x = iv.x;
  rec.y = iv.y;
  rec.z = iv.vertex[size_t(d.z)];
  try {
    rec.dP = t.partial_kl(iv.x, iv.y);
    const InductiveExpansion ex = gamma_expansion(iv, d, t);
    rec.gamma_nonneg = ex.nonneg;
    rec.inductive = inductive_piece(iv, d, t, &ex);
    rec.q = q_piece(iv, d, t);
    rec.q_nonneg = rec.q.nonneg_coeffs();
    rec.pass = (rec.dP == rec.inductive + rec.q);
  } catch (const std::exception& e) {
    rec.pass = false;
    rec.error = e.what();
  }
  return rec;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (uint8_t(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", unsigned(uint8_t(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
}

}  // namespace

std::string record_jsonl(const VerificationRecord& r) {
  std::string s = "{\"x\":\"";
  append_escaped(s, r.x.str());
  s += "\",\"y\":\"";
  append_escaped(s, r.y.str());
  s += "\",\"z\":";
  if (r.z) {
    s += "\"";
    append_escaped(s, r.z->str());
    s += "\"";
  } else {
    s += "null";
  }
  if (r.error.empty()) {
    s += ",\"dP\":" + r.dP.coeff_list_str();
    s += ",\"I\":" + r.inductive.coeff_list_str();
    s += ",\"Q\":" + r.q.coeff_list_str();
    s += ",\"pass\":";
    s += r.pass ? "true" : "false";
    s += ",\"gamma_nonneg\":";
    s += r.gamma_nonneg ? "true" : "false";
  } else {
    s += ",\"error\":\"";
    append_escaped(s, r.error);
    s += "\",\"pass\":false";
  }
  s += "}";
  return s;
}

}  // namespace klhc
