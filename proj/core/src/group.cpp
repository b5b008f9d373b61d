#include "tpacas/group.hpp"

#include <array>
#include <map>

#include "tpacas/errors.hpp"

namespace tpacas {
namespace {

bool probably_prime(const BigInt& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) > 0;
}

constexpr std::array<unsigned long, 54> kSmallPrimes = {
    3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
    53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257};

// Cheap filter: rejects q when q or 2q + 1 has a small factor.
bool survives_sieve(const BigInt& q) {
  for (unsigned long prime : kSmallPrimes) {
    const unsigned long r = mpz_fdiv_ui(q.get_mpz_t(), prime);
    if (r == 0 && q != prime) return false;
    if ((2 * r + 1) % prime == 0) return false;
  }
  return true;
}

void check_d_max(const BigInt& d_max, const BigInt& q) {
  if (d_max < 1) throw InvalidGroup("d_max must be >= 1");
  if (d_max * d_max >= q) {
    throw InvalidGroup("d_max^2 = " + to_decimal(d_max * d_max) +
                       " must be smaller than q");
  }
}

std::map<std::string, std::string> split_record(std::string_view record) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos <= record.size()) {
    std::size_t end = record.find(';', pos);
    if (end == std::string_view::npos) end = record.size();
    std::string_view item = record.substr(pos, end - pos);
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("group record item without '=': " + std::string(item));
      }
      out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace

bool GroupParams::operand_in_bound(const BigInt& x) const {
  return sgn(x) >= 0 && 2 * multiplier_product_bound() * x < q;
}

std::string GroupParams::to_record() const {
  return "p=" + to_decimal(p) + ";q=" + to_decimal(q) + ";g=" + to_decimal(g) +
         ";d_max=" + to_decimal(d_max);
}

GroupParams GroupParams::from_record(std::string_view record) {
  const auto items = split_record(record);
  auto get = [&](const char* key) {
    auto it = items.find(key);
    if (it == items.end()) throw ParseError(std::string("group record lacks ") + key);
    return from_decimal(it->second);
  };
  return GroupParams{get("p"), get("q"), get("g"), get("d_max")};
}

void validate_group(const GroupParams& params) {
  if (params.q < 3 || !probably_prime(params.q)) throw InvalidGroup("q is not prime");
  if (params.p < 5 || !probably_prime(params.p)) throw InvalidGroup("p is not prime");
  if (mod(params.p - 1, params.q) != 0) throw InvalidGroup("q does not divide p - 1");
  if (params.g <= 1 || params.g >= params.p) throw InvalidGroup("g must lie in (1, p)");
  BigInt order_check;
  mpz_powm(order_check.get_mpz_t(), params.g.get_mpz_t(), params.q.get_mpz_t(),
           params.p.get_mpz_t());
  if (order_check != 1) throw InvalidGroup("g does not have order q");
  check_d_max(params.d_max, params.q);
}

bool is_valid_group(const GroupParams& params) noexcept {
  try {
    validate_group(params);
    return true;
  } catch (...) {
    return false;
  }
}

GroupParams generate_group(unsigned q_bits, const BigInt& d_max, RandomSource& rng) {
  if (q_bits < 16) throw DomainError("group bit length must be >= 16");
  // Any q of q_bits bits is at least 2^(q_bits-1); reject hopeless bounds early.
  const BigInt smallest_q = BigInt(1) << (q_bits - 1);
  if (d_max < 1 || d_max * d_max >= smallest_q) {
    check_d_max(d_max, smallest_q);
  }

  const BigInt span = BigInt(1) << (q_bits - 2);
  BigInt q;
  for (;;) {
    // Top two bits set keeps q in range while stepping upwards.
    q = smallest_q + span + sample_scalar(span, rng);
    if (mpz_even_p(q.get_mpz_t())) ++q;
    bool found = false;
    for (int step = 0; step < 100000 && bit_length(q) == q_bits; ++step, q += 2) {
      if (!survives_sieve(q)) continue;
      if (probably_prime(q) && probably_prime(2 * q + 1)) {
        found = true;
        break;
      }
    }
    if (found) break;
  }

  GroupParams params{2 * q + 1, q, 0, d_max};
  for (;;) {
    const BigInt h = 2 + sample_scalar(params.p - 3, rng);
    params.g = mod(h * h, params.p);
    if (params.g != 1) break;
  }
  check_d_max(d_max, params.q);
  return params;
}

GroupParams toy_group() { return GroupParams{1187, 593, 3, 5}; }

GroupParams modp1024_group(const BigInt& d_max) {
  static const BigInt p(
      "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
      "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
      "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
      "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
      "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE65381"
      "FFFFFFFFFFFFFFFF",
      16);
  GroupParams params{p, (p - 1) / 2, 4, d_max};
  check_d_max(d_max, params.q);
  return params;
}

BigInt mod_exp(const BigInt& base, const BigInt& exponent, const GroupParams& params) {
  BigInt b = mod(base, params.p);
  BigInt e = exponent;
  if (sgn(e) < 0) {
    b = mod_inverse(b, params.p);
    e = -e;
  }
  BigInt out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), params.p.get_mpz_t());
  return out;
}

KeyPair generate_keypair(const GroupParams& params, RandomSource& rng) {
  const BigInt secret = 1 + sample_scalar(params.q - 1, rng);
  return keypair_from_secret(secret, params);
}

KeyPair keypair_from_secret(const BigInt& secret, const GroupParams& params) {
  if (secret < 1 || secret >= params.q) throw DomainError("secret key must lie in [1, q)");
  return KeyPair{secret, mod_exp(params.g, secret, params)};
}

bool is_group_key(const BigInt& element, const GroupParams& params) {
  if (element <= 1 || element >= params.p) return false;
  return mod_exp(element, params.q, params) == 1;
}

}  // namespace tpacas
