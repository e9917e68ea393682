#include "s2xr/groups.hpp"

#include <cmath>
#include <numeric>

namespace s2xr {

Fraction::Fraction(long num, long den) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Fraction Fraction::mod1() const {
  long r = num_ % den_;
  if (r < 0) r += den_;
  return Fraction(r, den_);
}

std::string Fraction::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator-(const Fraction& a) { return Fraction(-a.num_, a.den_); }

std::vector<Fraction> SpaceGroupSpec::translation_parts() const {
  std::vector<Fraction> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.frac);
  return out;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"1q.I.1", "1q.I.2", "3q.I.1", "3q.I.2",
                                                 "3qe.I.3", "8.I.1", "8.I.2", "9.I.1",
                                                 "9.I.2",  "10.I.1"};
  return names;
}

bool has_q_parameter(std::string_view name) {
  return name.starts_with("1q.") || name.starts_with("3q.") || name.starts_with("3qe.");
}

namespace {

Mat3 power(const Mat3& m, int n) {
  Mat3 r = Mat3::identity();
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

Mat3 word_linear(const std::vector<int>& word, const std::vector<Mat3>& gens) {
  Mat3 r = Mat3::identity();
  for (int i : word) r = r * gens.at(i);
  return r;
}

std::vector<Mat3> generator_matrices(const SpaceGroupSpec& spec) {
  std::vector<Mat3> out;
  for (const auto& g : spec.generators) out.push_back(rotation_matrix(g.axis, 2 * kPi / g.order));
  return out;
}

std::vector<int> repeat(const std::vector<int>& w, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

SpaceGroupSpec cyclic(std::string name, int q, Fraction frac) {
  SpaceGroupSpec s;
  s.name = std::move(name);
  s.family = Family::Cyclic;
  s.q = q;
  s.signature = "(+,0,[" + std::to_string(q) + "," + std::to_string(q) + "],{}) x 1_R";
  s.generators = {{{0, 0, 1}, q, frac}};
  s.relators = {repeat({0}, q)};
  s.point_group_order = q;
  s.search_triangle = {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{std::cos(kPi / q), std::sin(kPi / q), 0}};
  return s;
}

SpaceGroupSpec dihedral(std::string name, int q, Fraction f1, Fraction f2) {
  SpaceGroupSpec s;
  s.name = std::move(name);
  s.family = Family::Dihedral;
  s.q = q;
  s.signature = "(+,0,[2,2," + std::to_string(q) + "],{}) x 1_R";
  const Vec3 second{std::cos(kPi / q), std::sin(kPi / q), 0};
  s.generators = {{{1, 0, 0}, 2, f1}, {second, 2, f2}};
  s.relators = {{0, 0}, {1, 1}, repeat({0, 1}, q)};
  s.point_group_order = 2 * q;
  s.search_triangle = {Vec3{1, 0, 0}, second, Vec3{0, 0, 1}};
  return s;
}

// [2,3,n] with n = 3, 4, 5. The 3-fold axis lies in the [x,y] plane at the
// angle c from the x axis given by cos c = cos(pi/n) / sin(pi/3); its sense
// is chosen so that g1 g2 has order n.
SpaceGroupSpec polyhedral(std::string name, Family family, int n, Fraction f1, Fraction f2) {
  SpaceGroupSpec s;
  s.name = std::move(name);
  s.family = family;
  s.signature = "(+,0,[2,3," + std::to_string(n) + "],{}) x 1_R";
  const double c = std::acos(std::cos(kPi / n) / std::sin(kPi / 3));
  const Mat3 g1 = rotation_matrix({1, 0, 0}, kPi);
  Vec3 axis{std::cos(c), std::sin(c), 0};
  if (frobenius_distance(power(g1 * rotation_matrix(axis, 2 * kPi / 3), n), Mat3::identity()) >
      1e-9) {
    axis.y = -axis.y;
  }
  s.generators = {{{1, 0, 0}, 2, f1}, {axis, 3, f2}};
  s.relators = {{0, 0}, {1, 1, 1}, repeat({0, 1}, n)};
  s.point_group_order = family == Family::Tetrahedral ? 12 : (family == Family::Octahedral ? 24 : 60);
  Vec3 third = rotation_axis(g1 * rotation_matrix(axis, 2 * kPi / 3));
  if (dot(third, Vec3{1, 0, 0}) < 0) third = -third;
  s.search_triangle = {Vec3{1, 0, 0}, axis, third};
  return s;
}

int require_q(std::string_view name, std::optional<int> q, int fallback, int minimum) {
  const int v = q.value_or(fallback);
  if (v < minimum) {
    throw UnknownGroup(std::string(name) + ": parameter q=" + std::to_string(v) +
                       " is below the minimum " + std::to_string(minimum));
  }
  return v;
}

}  // namespace

SpaceGroupSpec make_group(std::string_view name, std::optional<int> q, std::optional<int> k) {
  const Fraction zero;
  const Fraction half(1, 2);
  if (name == "1q.I.1") return cyclic("1q.I.1", require_q(name, q, 3, 1), zero);
  if (name == "1q.I.2") {
    const int qq = require_q(name, q, 3, 2);
    const int kk = k.value_or(1);
    if (kk < 1 || kk > qq / 2) {
      throw UnknownGroup("1q.I.2: k must lie in [1, floor(q/2)], got k=" + std::to_string(kk));
    }
    auto s = cyclic("1q.I.2", qq, Fraction(kk, qq));
    s.k = kk;
    return s;
  }
  if (name == "3q.I.1") return dihedral("3q.I.1", require_q(name, q, 3, 2), zero, zero);
  if (name == "3q.I.2") return dihedral("3q.I.2", require_q(name, q, 3, 2), half, half);
  if (name == "3qe.I.3") {
    const int qq = require_q(name, q, 4, 2);
    if (qq % 2 != 0) throw UnknownGroup("3qe.I.3 requires an even q, got q=" + std::to_string(qq));
    return dihedral("3qe.I.3", qq, zero, half);
  }
  if (q.has_value() || k.has_value()) {
    if (name == "8.I.1" || name == "8.I.2" || name == "9.I.1" || name == "9.I.2" ||
        name == "10.I.1") {
      throw UnknownGroup(std::string(name) + " takes no q or k parameter");
    }
  }
  if (name == "8.I.1") return polyhedral("8.I.1", Family::Tetrahedral, 3, zero, zero);
  if (name == "8.I.2") return polyhedral("8.I.2", Family::Tetrahedral, 3, zero, Fraction(1, 3));
  if (name == "9.I.1") return polyhedral("9.I.1", Family::Octahedral, 4, zero, zero);
  if (name == "9.I.2") return polyhedral("9.I.2", Family::Octahedral, 4, half, zero);
  if (name == "10.I.1") return polyhedral("10.I.1", Family::Icosahedral, 5, zero, zero);
  throw UnknownGroup("unknown group '" + std::string(name) + "'");
}

std::vector<PointGroupElement> build_point_group(const SpaceGroupSpec& spec) {
  const std::vector<Mat3> gens = generator_matrices(spec);
  constexpr double kDedupe = 1e-8;

  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (frobenius_distance(power(gens[i], spec.generators[i].order), Mat3::identity()) > 1e-10) {
      throw RelationViolation(spec.name + ": generator " + std::to_string(i) +
                              " does not have its stated order");
    }
  }
  for (const auto& rel : spec.relators) {
    if (frobenius_distance(word_linear(rel, gens), Mat3::identity()) > 1e-9) {
      throw RelationViolation(spec.name + ": relator does not evaluate to the identity");
    }
    Fraction total;
    for (int i : rel) total = total + spec.generators.at(i).frac;
    if (!total.is_integer()) {
      throw RelationViolation(spec.name + ": relator translation part " + total.str() +
                              " is not a lattice translation");
    }
  }

  std::vector<PointGroupElement> elements{{Mat3::identity(), Fraction(), {}}};
  std::size_t frontier_begin = 0;
  const std::size_t limit = 10 * static_cast<std::size_t>(spec.point_group_order);
  while (frontier_begin < elements.size()) {
    const std::size_t frontier_end = elements.size();
    for (std::size_t e = frontier_begin; e < frontier_end; ++e) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const PointGroupElement& base = elements[e];
        const Mat3 m = base.linear * gens[g];
        const Fraction f = (base.frac + spec.generators[g].frac).mod1();
        bool seen = false;
        for (const auto& existing : elements) {
          if (frobenius_distance(existing.linear, m) < kDedupe) {
            if (!(existing.frac == f)) {
              throw RelationViolation(spec.name +
                                      ": translation parts are inconsistent with the relations");
            }
            seen = true;
            break;
          }
        }
        if (!seen) {
          std::vector<int> word = base.word;
          word.push_back(static_cast<int>(g));
          elements.push_back({m, f, std::move(word)});
          if (elements.size() > limit) {
            throw ClosureOverflow(spec.name + ": closure exceeded " + std::to_string(limit) +
                                  " elements");
          }
        }
      }
    }
    frontier_begin = frontier_end;
  }
  if (static_cast<int>(elements.size()) != spec.point_group_order) {
    throw RelationViolation(spec.name + ": closure has " + std::to_string(elements.size()) +
                            " elements, expected " + std::to_string(spec.point_group_order));
  }
  return elements;
}

std::vector<GroupElement> enumerate_elements(const SpaceGroupSpec& spec, double tau, int k_max) {
  if (!(tau > 0.0)) throw DomainError("enumerate_elements: tau must be positive");
  if (k_max < 0) throw DomainError("enumerate_elements: k_max must be nonnegative");
  std::vector<GroupElement> out;
  for (const auto& pge : build_point_group(spec)) {
    // Fractions lie in [0, 1), so |s + m| <= k_max reads -k_max - s <= m <= k_max - s.
    const double s = pge.frac.value();
    const int m_lo = static_cast<int>(std::ceil(-k_max - s - 1e-12));
    const int m_hi = static_cast<int>(std::floor(k_max - s + 1e-12));
    for (int m = m_lo; m <= m_hi; ++m) {
      const bool identity_linear = pge.word.empty();
      if (identity_linear && pge.frac.num() == 0 && m == 0) continue;
      GroupElement el;
      el.iso = Isometry{pge.linear, 1, (s + m) * tau};
      el.word = pge.word;
      el.frac = pge.frac;
      el.lattice = m;
      out.push_back(std::move(el));
    }
  }
  return out;
}

std::vector<TranslationClass> frobenius_classes(std::string_view family, int q) {
  const Fraction zero;
  const Fraction half(1, 2);
  if (family == "1q") {
    if (q < 1) throw UnknownGroup("family 1q requires q >= 1");
    std::vector<TranslationClass> out{{"1q.I.1", {zero}}};
    for (int k = 1; k <= q / 2; ++k) out.push_back({"1q.I.2", {Fraction(k, q)}});
    return out;
  }
  if (family == "3q") {
    std::vector<TranslationClass> out{{"3q.I.1", {zero, zero}}, {"3q.I.2", {half, half}}};
    if (q % 2 == 0) out.push_back({"3qe.I.3", {zero, half}});
    return out;
  }
  if (family == "8") return {{"8.I.1", {zero, zero}}, {"8.I.2", {zero, Fraction(1, 3)}}};
  if (family == "9") return {{"9.I.1", {zero, zero}}, {"9.I.2", {half, zero}}};
  if (family == "10") return {{"10.I.1", {zero, zero}}};
  throw UnknownGroup("unknown family '" + std::string(family) + "'");
}

Isometry generator_isometry(const SpaceGroupSpec& spec, int index, double tau) {
  const Generator& g = spec.generators.at(index);
  return Isometry::rotation(g.axis, 2 * kPi / g.order, g.frac.value() * tau);
}

Isometry word_isometry(const SpaceGroupSpec& spec, const std::vector<int>& word, double tau) {
  Isometry r = Isometry::identity();
  for (int i : word) r = compose(r, generator_isometry(spec, i, tau));
  return r;
}

}  // namespace s2xr
