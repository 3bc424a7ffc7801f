#pragma once

// Shared fixtures for the test programs: the reference shifts, hand-rolled
// random generators, and brute-force oracles that work from raw coordinates
// only (no canonical forms, transfer matrices or closed forms).

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "smale/checks.hpp"
#include "smale/groupoid.hpp"
#include "smale/sft_core.hpp"
#include "smale/weights.hpp"

namespace smale {

template <class Scalar>
std::ostream& operator<<(std::ostream& os, const BasicStateVector<Scalar>& v) {
  os << "{";
  for (const auto& [x, c] : v.entries()) os << " " << x.to_string() << ":" << c;
  return os << " }";
}

inline std::ostream& operator<<(std::ostream& os, const Amplitude& a) { return os << to_string(a); }

}  // namespace smale

namespace fixture {

using namespace smale;

struct Reference {
  std::string name;
  ShiftRef shift;
  std::vector<OrbitRef> P;
  std::vector<OrbitRef> Q;
  double dimension = 0;  // log_2 of the Perron root

  WeightSystem weights(Omega0Kind kind = Omega0Kind::indicator, Rational c0 = 1) const {
    return WeightSystem(P, Q, kind, c0, 1);
  }
};

inline Reference full_shift(std::uint64_t k) {
  auto s = EdgeShift::from_adjacency({{k}}, "full" + std::to_string(k));
  return {s->name(), s, {make_orbit(s, {0})}, {make_orbit(s, {1})}, std::log2(static_cast<double>(k))};
}

// Edges 0: 0->0, 1: 0->1, 2: 1->0.
inline Reference golden_mean() {
  auto s = EdgeShift::from_adjacency({{1, 1}, {1, 0}}, "golden");
  return {"golden", s, {make_orbit(s, {0})}, {make_orbit(s, {1, 2})}, std::log2((1 + std::sqrt(5.0)) / 2)};
}

inline std::vector<Reference> references() { return {full_shift(2), full_shift(3), golden_mean()}; }

struct Localization {
  std::size_t q;
  Coord phase;
  Coord depth;
};

inline std::vector<Localization> localizations(const Reference& r) {
  std::vector<Localization> out;
  for (std::size_t q = 0; q < r.Q.size(); ++q) {
    out.push_back({q, 0, 1});
    out.push_back({q, 1, 2});
  }
  return out;
}

// --------------------------------------------------------------- generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  /// A point of X^h(P, Q): random tails, random window, rejection on
  /// non-paths.
  HeteroclinicPoint point(const Reference& r, Coord spread = 6, std::size_t max_window = 8) {
    const auto pt = all_tails(r.P);
    const auto qt = all_tails(r.Q);
    for (;;) {
      const Tail& past = pick(qt);
      const Tail& future = pick(pt);
      const Coord lo = between(-spread, spread);
      Word window(static_cast<std::size_t>(between(0, static_cast<std::int64_t>(max_window))));
      for (auto& e : window) e = static_cast<EdgeId>(between(0, static_cast<std::int64_t>(r.shift->edge_count()) - 1));
      try {
        return HeteroclinicPoint::from_window(past, future, lo, window);
      } catch (const InvalidPath&) {
      }
    }
  }

  /// A point agreeing with x on every coordinate n >= from (a stable
  /// neighbour), with a random past.
  HeteroclinicPoint stable_neighbour(const Reference& r, const HeteroclinicPoint& x, Coord from) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      HeteroclinicPoint y = point(r);
      try {
        return splice(y, x, from);
      } catch (const InvalidPath&) {
      }
    }
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

// ------------------------------------------------------------------ oracles

/// Coordinate window comparison over [-h, h].
inline bool agree(const HeteroclinicPoint& x, const std::function<EdgeId(Coord)>& f, Coord h = 80) {
  for (Coord n = -h; n <= h; ++n)
    if (x.at(n) != f(n)) return false;
  return true;
}

/// Whether coordinates [from, from + horizon) follow some P-tail.
inline bool follows_p_from(const std::vector<OrbitRef>& P, const std::function<EdgeId(Coord)>& x, Coord from,
                           Coord horizon = 64) {
  for (const auto& o : P) {
    for (Coord a = 0; a < o->period(); ++a) {
      bool ok = true;
      for (Coord n = from; n < from + horizon && ok; ++n) ok = x(n) == o->at(n + a);
      if (ok) return true;
    }
  }
  return false;
}

inline std::function<EdgeId(Coord)> coords(const HeteroclinicPoint& x) {
  return [x](Coord n) { return x.at(n); };
}

inline std::function<EdgeId(Coord)> shifted(const std::function<EdgeId(Coord)>& x, Coord k) {
  return [x, k](Coord n) { return x(n + k); };
}

/// The N with phi^N(x) in E_0, found by testing membership in X^s(P, eps)
/// and its preimage for every candidate.
inline Coord entry_index_by_search(const std::vector<OrbitRef>& P, const HeteroclinicPoint& x, Coord range = 60) {
  auto c = coords(x);
  for (Coord N = -range; N <= range; ++N) {
    auto y = shifted(c, N);
    if (!follows_p_from(P, y, 0) && follows_p_from(P, y, 1)) return N;
  }
  return range + 1;
}

/// 2^{-m} distance from the clopen set { y : y_n = p_n, n >= 0 }.
inline Rational distance_to_local_stable(const std::vector<OrbitRef>& P, const std::function<EdgeId(Coord)>& x) {
  Coord best = 0;
  for (const auto& o : P) {
    for (Coord a = 0; a < o->period(); ++a) {
      Coord m = 0;
      while (m < 64 && x(m) == o->at(m + a)) ++m;
      best = std::max(best, m);
    }
  }
  if (best >= 64) return 0;
  return Rational(1, boost::multiprecision::cpp_int(1) << static_cast<unsigned>(best));
}

inline Rational omega0_by_sets(const WeightSystem& w, const std::function<EdgeId(Coord)>& x) {
  if (follows_p_from(w.P(), x, 0)) return 0;
  if (!follows_p_from(w.P(), x, 1)) return 1;
  if (w.kind() == Omega0Kind::indicator) return 1;
  Rational r = w.c0() * distance_to_local_stable(w.P(), x);
  return r < 1 ? r : Rational(1);
}

/// Both defining sums of omega_s, truncated where every further term
/// vanishes.
inline Rational omega_s_by_sums(const WeightSystem& w, const HeteroclinicPoint& x, Coord horizon = 60) {
  auto c = coords(x);
  Rational sum = 0;
  for (Coord n = 0; n <= horizon; ++n) sum += omega0_by_sets(w, shifted(c, n));
  for (Coord n = 1; n <= horizon; ++n) sum -= 1 - omega0_by_sets(w, shifted(c, -n));
  return sum;
}

/// c(n) for every n <= n_max, by walking all edge words between the fixed
/// past of the localizing cylinder and every P-tail.
inline std::map<Coord, std::uint64_t> brute_counts(const Reference& r, const Localization& loc, Coord n_max) {
  const EdgeShift& g = *r.shift;
  const Tail q = Tail::make(r.Q.at(loc.q), loc.phase);
  std::map<Coord, std::uint64_t> out;
  for (Coord n = loc.depth - 8; n <= n_max; ++n) out[n] = 0;

  for (const Tail& t : all_tails(r.P)) {
    for (Coord n = loc.depth - 8; n <= n_max; ++n) {
      const Coord len = std::max<Coord>(0, n - loc.depth);
      Word word(static_cast<std::size_t>(len));
      auto x = [&](Coord k) -> EdgeId {
        if (k <= loc.depth) return q.at(k);
        if (k <= n) return word[static_cast<std::size_t>(k - loc.depth - 1)];
        return t.at(k);
      };
      auto valid = [&] {
        if (x(n) == t.at(n)) return false;
        for (Coord k = n + 1; k <= loc.depth; ++k)
          if (q.at(k) != t.at(k)) return false;
        for (Coord k = std::min(n, loc.depth) - 1; k <= std::max(n, loc.depth) + 1; ++k)
          if (!g.composes(x(k), x(k + 1))) return false;
        return true;
      };
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == word.size()) {
          if (valid()) ++out[n];
          return;
        }
        const EdgeId prev = i == 0 ? q.at(loc.depth) : word[i - 1];
        for (EdgeId e : g.out_edges(g.edge(prev).target)) {
          word[i] = e;
          walk(i + 1);
        }
      };
      walk(0);
    }
  }
  return out;
}

inline BasicFunction localization(const Reference& r, const Localization& loc) {
  return reference_localization(r.weights(), loc.q, loc.phase, loc.depth);
}

/// The window at [lo, lo + size), the Q-tail before it and the P-tail after.
inline HeteroclinicPoint point_of(const Reference& r, Coord lo, Word window, std::size_t q = 0, std::size_t p = 0) {
  return HeteroclinicPoint::from_window(Tail::make(r.Q.at(q), 0), Tail::make(r.P.at(p), 0), lo, std::move(window));
}

}  // namespace fixture
