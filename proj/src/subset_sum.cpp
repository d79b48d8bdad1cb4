// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "npforge/subset_sum.hpp"

#include "npforge/errors.hpp"
#include "npforge/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace npforge {

namespace {

Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

bool fits_fast(const SignedInstance& si) { return si.total() < (Integer(1) << 61); }

std::vector<std::int64_t> as_int64(const SignedInstance& si) {
  std::vector<std::int64_t> y;
  for (const auto& v : si.values) y.push_back(to_int64(v));
  return y;
}

// Calls f(pattern, sum) for every sign pattern in Gray order.
template <class T, class F>
void for_each_signed_sum(const std::vector<T>& y, F&& f) {
  const std::size_t n = y.size();
  T sum = 0;
  for (const auto& v : y) sum -= v;
  std::uint64_t a = 0;
  f(a, sum);
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(step));
    const bool on = ((a >> bit) & 1u) == 0;
    a ^= std::uint64_t{1} << bit;
    if (on) sum += 2 * y[bit];
    else sum -= 2 * y[bit];
    f(a, sum);
  }
}

template <class T>
std::vector<T> half_sums(const std::vector<T>& y) {
  std::vector<T> out;
  out.reserve(std::size_t{1} << y.size());
  for_each_signed_sum(y, [&](std::uint64_t, const T& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
std::uint64_t count_zero(const std::vector<T>& y) {
  const std::size_t n = y.size();
  if (n <= kDirectEnumMax) {
    std::uint64_t count = 0;
    for_each_signed_sum(y, [&](std::uint64_t, const T& s) { count += s == 0; });
    return count;
  }
  const std::size_t h = n / 2;
  const std::vector<T> left(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<T> right(y.begin() + static_cast<std::ptrdiff_t>(h), y.end());
  const auto ls = half_sums(left);
  std::uint64_t count = 0;
  for_each_signed_sum(right, [&](std::uint64_t, const T& s) {
    const T want = -s;
    auto [lo, hi] = std::equal_range(ls.begin(), ls.end(), want);
    count += static_cast<std::uint64_t>(hi - lo);
  });
  return count;
}

void require_enumerable(std::size_t n, std::size_t max, const char* what) {
  if (n > max)
    throw InstanceTooLarge(std::string(what) + " limited to " + std::to_string(max) + " values");
}

// sum -> number of sign patterns, by direct enumeration.
std::unordered_map<std::int64_t, std::uint64_t> sum_histogram(const SignedInstance& si) {
  std::unordered_map<std::int64_t, std::uint64_t> hist;
  for_each_signed_sum(as_int64(si), [&](std::uint64_t, std::int64_t s) { ++hist[s]; });
  return hist;
}

}  // namespace

Integer SignedInstance::total() const {
  Integer t = 0;
  for (const auto& v : values) t += v;
  return t;
}

void SignedInstance::validate() const {
  for (const auto& v : values)
    if (v <= 0) throw InputError("signed instance values must be positive");
}

NormalizedInstance normalize(const SubsetSumInstance& inst) {
  NormalizedInstance out;
  Integer sum = 0;
  for (const auto& v : inst.values) {
    sum += v;
    if (v == 0) ++out.dropped_zeros;
    else out.signed_form.values.push_back(abs_int(v));
  }
  out.s = 2 * inst.target - sum;
  if (out.s != 0) out.signed_form.values.push_back(abs_int(out.s));
  return out;
}

std::uint64_t brute_force_zero(const SignedInstance& si) {
  si.validate();
  require_enumerable(si.values.size(), kMeetInMiddleMax, "zero counting");
  if (fits_fast(si)) return count_zero(as_int64(si));
  return count_zero(si.values);
}

std::optional<std::vector<bool>> solve_subset_sum(const SubsetSumInstance& inst) {
  const std::size_t n = inst.values.size();
  require_enumerable(n, kMeetInMiddleMax, "subset sum search");
  const std::size_t h = n / 2;
  // Left half: (sum, mask) sorted by sum.
  std::vector<std::pair<Integer, std::uint64_t>> left;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << h); ++m) {
    Integer s = 0;
    for (std::size_t i = 0; i < h; ++i)
      if ((m >> i) & 1u) s += inst.values[i];
    left.emplace_back(std::move(s), m);
  }
  std::sort(left.begin(), left.end());
  const std::size_t r = n - h;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
    Integer s = 0;
    for (std::size_t i = 0; i < r; ++i)
      if ((m >> i) & 1u) s += inst.values[h + i];
    const Integer want = inst.target - s;
    auto it = std::lower_bound(left.begin(), left.end(), want,
                               [](const auto& e, const Integer& v) { return e.first < v; });
    if (it != left.end() && it->first == want) {
      std::vector<bool> take(n, false);
      for (std::size_t i = 0; i < h; ++i) take[i] = (it->second >> i) & 1u;
      for (std::size_t i = 0; i < r; ++i) take[h + i] = (m >> i) & 1u;
      return take;
    }
  }
  return std::nullopt;
}

Integer power_sum_identity(unsigned k, const SignedInstance& si) {
  if (k % 2 == 1) return 0;
  if (k > 6) throw InputError("closed form known for k <= 6 only");
  std::array<Integer, 7> s{};
  for (const auto& y : si.values) {
    Integer p = 1;
    for (unsigned e = 1; e <= 6; ++e) {
      p *= y;
      s[e] += p;
    }
  }
  const Integer two_n = Integer(1) << si.values.size();
  switch (k) {
    case 0: return two_n;
    case 2: return two_n * s[2];
    case 4: return two_n * (3 * s[2] * s[2] - 2 * s[4]);
    default: return two_n * (16 * s[6] - 30 * s[2] * s[4] + 15 * s[2] * s[2] * s[2]);
  }
}

Integer power_sum_brute(unsigned k, const SignedInstance& si) {
  require_enumerable(si.values.size(), kDirectEnumMax, "power sum enumeration");
  Integer acc = 0;
  auto add = [&](const Integer& s, std::uint64_t count) {
    Integer p = 1;
    for (unsigned e = 0; e < k; ++e) p *= s;
    acc += p * count;
  };
  if (fits_fast(si)) {
    for (const auto& [s, c] : sum_histogram(si)) add(Integer(s), c);
  } else {
    for_each_signed_sum(si.values, [&](std::uint64_t, const Integer& s) { add(s, 1); });
  }
  return acc;
}

double cosine_integral(const SignedInstance& si, const Quadrature& q) {
  si.validate();
  const Integer total = si.total();
  if (total > Integer(1) << 40) throw InstanceTooLarge("frequencies too large to sample");
  const std::size_t sigma = static_cast<std::size_t>(to_int64(total));
  std::size_t K = q.samples == 0 ? 4 * sigma + 1 : q.samples;
  std::vector<double> y;
  for (const auto& v : si.values) y.push_back(to_double(v));
  auto f = [&](double phi) {
    double p = 1.0;
    for (double v : y) p *= std::cos(phi * v);
    return p;
  };
  const double two_pi = 2.0 * std::numbers::pi;
  switch (q.method) {
    case QuadratureMethod::Trapezoid: {
      if (K < 2 * sigma + 1)
        throw InputError("need at least " + std::to_string(2 * sigma + 1) + " nodes");
      const double h = two_pi / static_cast<double>(K);
      double acc = 0;
      for (std::size_t k = 0; k < K; ++k) acc += f(h * static_cast<double>(k));
      return acc * h;
    }
    case QuadratureMethod::Simpson: {
      if (K % 2 == 1) ++K;
      if (K < 2 * sigma + 2)
        throw InputError("need at least " + std::to_string(2 * sigma + 2) + " nodes");
      const double h = two_pi / static_cast<double>(K);
      double acc = 0;
      for (std::size_t k = 0; k < K; ++k) acc += (k % 2 == 0 ? 2.0 : 4.0) * f(h * static_cast<double>(k));
      return acc * h / 3.0;
    }
    case QuadratureMethod::MonteCarlo: {
      Rng rng(q.seed);
      double acc = 0;
      for (std::size_t k = 0; k < K; ++k) acc += f(rng.uniform(0.0, two_pi));
      return two_pi * acc / static_cast<double>(K);
    }
  }
  throw InputError("unknown quadrature");
}

double cosine_integral_exact(const SignedInstance& si) {
  return 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(brute_force_zero(si)),
                                             -static_cast<int>(si.values.size()));
}

bool l1_sphere_check(const SignedInstance& si, double d) {
  si.validate();
  require_enumerable(si.values.size(), kDirectEnumMax, "l1 sphere check");
  std::vector<double> y;
  double ymax = 0;
  for (const auto& v : si.values) {
    y.push_back(to_double(v));
    ymax = std::max(ymax, y.back());
  }
  if (!(d > ymax)) throw InputError("l1 radius must exceed every value");
  const std::size_t n = y.size();
  // Integer values move the distance by at least 1/d when not on the sphere.
  const double tol = 0.5 / d;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
    double dist = 0;
    for (std::size_t i = 0; i < n; ++i) dist += std::fabs(y[i] / d - (((c >> i) & 1u) ? 1.0 : -1.0));
    if (std::fabs(dist - static_cast<double>(n)) < tol) return true;
  }
  return false;
}

InverseSquareResult inverse_square_probe(const SignedInstance& si) {
  si.validate();
  require_enumerable(si.values.size(), kDirectEnumMax, "inverse square probe");
  if (!fits_fast(si)) throw InstanceTooLarge("values too large for the probe");
  InverseSquareResult out;
  const auto hist = sum_histogram(si);
  if (hist.contains(0)) {
    out.infinite = true;
    out.value = INFINITY;
    return out;
  }
  for (const auto& [s, c] : hist) out.exact += Rational(Integer(c), Integer(s) * Integer(s));
  out.value = to_double(out.exact);
  return out;
}

std::vector<SignedSum> ordered_signed_sums(const SignedInstance& si) {
  require_enumerable(si.values.size(), 20, "signed sum listing");
  std::vector<SignedSum> out;
  for_each_signed_sum(si.values, [&](std::uint64_t a, const Integer& s) {
    if (s > 0) out.push_back({a, s});
  });
  std::sort(out.begin(), out.end(), [](const SignedSum& x, const SignedSum& y) {
    return x.sum != y.sum ? x.sum < y.sum : x.pattern < y.pattern;
  });
  return out;
}

SubsetSumInstance parse_subset_sum(std::string_view text) {
  SubsetSumInstance inst;
  bool have_target = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0] == "t") {
      if (toks.size() != 2) throw InputError("target line needs one integer", line_no);
      if (have_target) throw InputError("duplicate target line", line_no);
      try {
        inst.target = parse_integer(toks[1]);
      } catch (const InputError&) {
        throw InputError("bad target '" + toks[1] + "'", line_no);
      }
      have_target = true;
      continue;
    }
    if (toks.size() != 1) throw InputError("expected one integer per line", line_no);
    try {
      inst.values.push_back(parse_integer(toks[0]));
    } catch (const InputError&) {
      throw InputError("bad value '" + toks[0] + "'", line_no);
    }
  }
  if (inst.values.empty()) throw InputError("instance has no values");
  return inst;
}

std::string format_subset_sum(const SubsetSumInstance& inst) {
  std::string out;
  for (const auto& v : inst.values) out += to_decimal(v) + "\n";
  out += "t " + to_decimal(inst.target) + "\n";
  return out;
}

std::string instance_hash(const SignedInstance& si) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  };
  for (const auto& v : si.values) {
    for (char c : to_decimal(v)) feed(c);
    feed(',');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace npforge
