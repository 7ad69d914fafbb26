#include "lemni/polyeval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lemni {

namespace {

constexpr double kMinSeparation = 1e-15;

bool skipped(SkipSet skip, std::size_t k) {
  return std::find(skip.begin(), skip.end(), k) != skip.end();
}

}  // namespace

RootedPolynomial::RootedPolynomial(std::vector<cplx> roots, RootDomain domain)
    : roots_(std::move(roots)), domain_(domain) {
  if (roots_.empty()) throw std::invalid_argument("polynomial needs at least one root");
  for (const auto& x : roots_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument("non-finite root");
    if (domain == RootDomain::OpenDisc && std::norm(x) >= 1.0) throw std::invalid_argument("root outside the open unit disc");
  }
  // Sweep in order of real part; only neighbours within the tolerance band
  // in re can be closer than the tolerance.
  std::vector<std::size_t> order(roots_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return roots_[a].real() < roots_[b].real(); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const cplx a = roots_[order[i]];
      const cplx b = roots_[order[j]];
      if (b.real() - a.real() > kMinSeparation) break;
      if (std::abs(a - b) <= kMinSeparation)
        throw std::invalid_argument("roots closer than 1e-15");
    }
  }
}

RootedPolynomial RootedPolynomial::sample(std::size_t n, RngStream& stream) {
  std::vector<cplx> roots;
  roots.reserve(n);
  for (std::size_t k = 0; k < n; ++k) roots.push_back(sample_unit_disc(stream).value());
  return RootedPolynomial(std::move(roots));
}

RootedPolynomial RootedPolynomial::rotated(cplx phase) const {
  std::vector<cplx> r(roots_);
  for (auto& x : r) {
    x *= phase;
    if (domain_ == RootDomain::OpenDisc && std::norm(x) >= 1.0) x *= 1.0 - 0x1.0p-52;
  }
  return RootedPolynomial(std::move(r), domain_);
}

double log_abs_p(const RootedPolynomial& poly, cplx z) {
  double acc = 0.0;
  for (const auto& x : poly.roots()) {
    const double d = std::abs(z - x);
    if (d < kRootCoincidence) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

double log_abs_p_fast(const RootedPolynomial& poly, cplx z) {
  double mant = 1.0;
  long expo = 0;
  for (const auto& x : poly.roots()) {
    const double dx = z.real() - x.real();
    const double dy = z.imag() - x.imag();
    mant *= dx * dx + dy * dy;
    if (mant < 1e-150 || mant > 1e150) {
      if (mant == 0.0) return -std::numeric_limits<double>::infinity();
      int e = 0;
      mant = std::frexp(mant, &e);
      expo += e;
    }
  }
  return 0.5 * (std::log(mant) + static_cast<double>(expo) * std::numbers::ln2);
}

cplx s_sum(const RootedPolynomial& poly, cplx z, SkipSet skip) {
  cplx acc{0.0, 0.0};
  const auto& roots = poly.roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (!skip.empty() && skipped(skip, k)) continue;
    const cplx w = z - roots[k];
    if (std::abs(w) < kRootCoincidence) throw std::domain_error("s_sum: z coincides with a root");
    acc += reciprocal(w);
  }
  return acc;
}

cplx r_sum(const RootedPolynomial& poly, cplx z, SkipSet skip) {
  cplx acc{0.0, 0.0};
  const auto& roots = poly.roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (!skip.empty() && skipped(skip, k)) continue;
    const cplx w = z - roots[k];
    if (std::abs(w) < kRootCoincidence) throw std::domain_error("r_sum: z coincides with a root");
    const cplx inv = reciprocal(w);
    acc += inv * inv;
  }
  return acc;
}

double log_abs_q(const RootedPolynomial& poly, cplx z, std::size_t skip_index) {
  if (skip_index >= poly.degree()) throw std::out_of_range("log_abs_q: skip index out of range");
  double acc = 0.0;
  const auto& roots = poly.roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k == skip_index) continue;
    const double d = std::abs(z - roots[k]);
    if (d < kRootCoincidence) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

RootSums root_sums(const RootedPolynomial& poly, cplx z) {
  RootSums out{{0.0, 0.0}, {0.0, 0.0}, std::numeric_limits<double>::infinity(), 0};
  double s_re = 0.0, s_im = 0.0, r_re = 0.0, r_im = 0.0;
  double min_d2 = std::numeric_limits<double>::infinity();
  const auto& roots = poly.roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double wr = z.real() - roots[k].real();
    const double wi = z.imag() - roots[k].imag();
    const double d2 = wr * wr + wi * wi;
    const double ir = wr / d2;
    const double ii = -wi / d2;
    s_re += ir;
    s_im += ii;
    r_re += ir * ir - ii * ii;
    r_im += 2.0 * ir * ii;
    if (d2 < min_d2) {
      min_d2 = d2;
      out.nearest = k;
    }
  }
  out.s = {s_re, s_im};
  out.r = {r_re, r_im};
  out.min_dist = std::sqrt(min_d2);
  return out;
}

void write_roots_csv(std::ostream& out, const RootedPolynomial& poly) {
  const auto old = out.precision(17);
  for (const auto& x : poly.roots()) out << x.real() << ',' << x.imag() << '\n';
  out.precision(old);
}

RootedPolynomial read_roots_csv(std::istream& in) {
  std::vector<cplx> roots;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("roots csv line " + std::to_string(lineno) + ": expected re,im");
    try {
      std::size_t used_re = 0, used_im = 0;
      const std::string re_s = line.substr(0, comma);
      const std::string im_s = line.substr(comma + 1);
      const double re = std::stod(re_s, &used_re);
      const double im = std::stod(im_s, &used_im);
      if (used_re != re_s.size() || (used_im != im_s.size() && im_s.find_first_not_of(" \r", used_im) != std::string::npos))
        throw std::invalid_argument("trailing characters");
      roots.emplace_back(re, im);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("roots csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  return RootedPolynomial(std::move(roots));
}

}  // namespace lemni
