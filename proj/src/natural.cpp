#include "omega/natural.hpp"

#include <functional>

namespace omega {

Natural parseNatural(const std::string& text) {
  if (text.empty()) throw MalformedCode("empty natural");
  for (char c : text)
    if (c < '0' || c > '9') throw MalformedCode("not a natural: " + text);
  return Natural(text, 10);
}

std::size_t bitLength(const Natural& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::string naturalKey(const Natural& n) {
  std::size_t count = 0;
  void* raw = mpz_export(nullptr, &count, 1, 1, 1, 0, n.get_mpz_t());
  std::string key(static_cast<const char*>(raw), count);
  void (*freefunc)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(raw, count);
  return key;
}

std::size_t NaturalHash::operator()(const Natural& n) const {
  return std::hash<std::string>{}(naturalKey(n));
}

std::optional<std::uint64_t> toU64(const Natural& n) {
  if (n < 0 || bitLength(n) > 64) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

namespace {

// m is written as v = m + 1 in Elias delta form: gamma(len(v)) followed by v
// without its leading bit.
void binaryOf(std::string& out, const Natural& v) { out += v.get_str(2); }

}  // namespace

void appendNaturalBits(std::string& out, const Natural& m) {
  Natural v = m + 1;
  std::string vb;
  binaryOf(vb, v);
  Natural len = static_cast<unsigned long>(vb.size());
  std::string lb = len.get_str(2);
  out.append(lb.size() - 1, '0');
  out += lb;
  out.append(vb, 1, std::string::npos);
}

Natural encodeSeq(std::span<const Natural> xs) {
  std::string bits = "1";
  for (const auto& x : xs) {
    if (x < 0) throw MalformedCode("negative natural");
    appendNaturalBits(bits, x);
  }
  return Natural(bits, 2);
}

Natural encodeSeq(std::initializer_list<Natural> xs) {
  return encodeSeq(std::span<const Natural>(xs.begin(), xs.size()));
}

std::optional<std::vector<Natural>> tryDecodeSeq(const Natural& code) {
  if (code <= 0) return std::nullopt;
  const std::string bits = code.get_str(2);
  std::vector<Natural> out;
  std::size_t pos = 1;
  const std::size_t n = bits.size();
  while (pos < n) {
    std::size_t zeros = 0;
    while (pos < n && bits[pos] == '0') {
      ++zeros;
      ++pos;
    }
    if (pos + zeros + 1 > n) return std::nullopt;
    if (zeros > 62) return std::nullopt;
    std::uint64_t len = 0;
    for (std::size_t i = 0; i <= zeros; ++i) len = (len << 1) | (bits[pos + i] == '1');
    pos += zeros + 1;
    if (len == 0 || pos + (len - 1) > n) return std::nullopt;
    std::string vb = "1";
    vb.append(bits, pos, len - 1);
    pos += len - 1;
    out.emplace_back(Natural(vb, 2) - 1);
  }
  return out;
}

std::vector<Natural> decodeSeq(const Natural& code) {
  auto r = tryDecodeSeq(code);
  if (!r) throw MalformedCode("not a sequence code: " + (bitLength(code) < 200 ? toDecimal(code) : std::string("<large>")));
  return std::move(*r);
}

bool isSeq(const Natural& code) { return tryDecodeSeq(code).has_value(); }

}  // namespace omega
