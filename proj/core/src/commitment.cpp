#include "tpacas/commitment.hpp"

#include "tpacas/errors.hpp"

namespace tpacas {

RandRep rand_rep(const BigInt& x, const GroupParams& params, RandomSource& rng) {
  if (sgn(x) < 0 || x >= params.q) throw DomainError("rand_rep: value outside [0, q)");
  RandRep rep;
  rep.u = sample_scalar(params.q, rng);
  rep.v = mod(x - rep.u, params.q);
  return rep;
}

Commitment commit(const BigInt& x, const BigInt& r, const BigInt& key,
                  const GroupParams& params) {
  const BigInt gx = mod_exp(params.g, mod(x, params.q), params);
  const BigInt hr = mod_exp(key, mod(r, params.q), params);
  return Commitment{mod(gx * hr, params.p)};
}

Commitment combine(const Commitment& c1, const Commitment& c2, const GroupParams& params) {
  return Commitment{mod(c1.value * c2.value, params.p)};
}

bool verify_opening(const Commitment& c, const BigInt& x, const BigInt& r,
                    const BigInt& key, const GroupParams& params) {
  return commit(x, r, key, params) == c;
}

SharedSecret commit_shared(const BigInt& x, const BigInt& key, const GroupParams& params,
                           RandomSource& rng) {
  SharedSecret out;
  out.value = x;
  out.shares = rand_rep(x, params, rng);
  out.help_u = sample_scalar(params.q, rng);
  out.help_v = sample_scalar(params.q, rng);
  out.committed.first = commit(out.shares.u, out.help_u, key, params);
  out.committed.second = commit(out.shares.v, out.help_v, key, params);
  return out;
}

}  // namespace tpacas
