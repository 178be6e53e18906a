#include "dioph/optimizer.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "dioph/error.hpp"

namespace dioph::optimizer {

namespace {

struct Vertex {
  BigRational x, b, c;
};

// Cramer's rule on three rows taken as equalities.
std::optional<Vertex> intersect(const Inequality& r0, const Inequality& r1, const Inequality& r2) {
  auto det3 = [](const std::array<std::array<BigRational, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const std::array<const Inequality*, 3> r{&r0, &r1, &r2};
  std::array<std::array<BigRational, 3>, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = {r[i]->x, r[i]->b, r[i]->c};
  const BigRational d = det3(m);
  if (d == 0) return std::nullopt;
  std::array<BigRational, 3> sol;
  for (int col = 0; col < 3; ++col) {
    auto mc = m;
    for (int i = 0; i < 3; ++i) mc[i][col] = r[i]->rhs;
    sol[col] = det3(mc) / d;
  }
  return Vertex{sol[0], sol[1], sol[2]};
}

bool satisfies(const std::vector<Inequality>& rows, const Vertex& v) {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const Inequality& r) { return r.slack(v.x, v.b, v.c) >= 0; });
}

// Vertex maximising c, or nothing if the rows admit no vertex.
std::optional<Vertex> best_vertex(const std::vector<Inequality>& rows) {
  std::optional<Vertex> best;
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const auto v = intersect(rows[i], rows[j], rows[l]);
        if (!v || !satisfies(rows, *v)) continue;
        if (!best || v->c > best->c) best = v;
      }
    }
  }
  return best;
}

// A large box that keeps row subsets bounded, so that nonempty means a
// vertex exists.
std::vector<Inequality> box() {
  const BigRational big(BigInt(1) << 20);
  return {{"box", 1, 0, 0, big},  {"box", -1, 0, 0, big}, {"box", 0, 1, 0, big},
          {"box", 0, -1, 0, big}, {"box", 0, 0, 1, big},  {"box", 0, 0, -1, big}};
}

// Smallest subset of rows with empty intersection.
std::vector<std::string> infeasibility_certificate(const std::vector<Inequality>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<Inequality> subset = box();
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < n; ++i) {
        if (!pick[i]) continue;
        subset.push_back(rows[i]);
        ids.push_back(rows[i].id);
      }
      if (!best_vertex(subset)) return ids;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {};
}

std::vector<Inequality> rows_for(const BigRational& k, Objective objective) {
  std::vector<Inequality> rows = build_constraints(k).rows();
  if (objective == Objective::free_c) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const Inequality& r) { return r.id == "3"; }),
               rows.end());
  }
  return rows;
}

}  // namespace

std::vector<Inequality> ConstraintSystem::rows() const {
  std::vector<Inequality> out;
  for (const auto& c : constraints) out.insert(out.end(), c.parts.begin(), c.parts.end());
  return out;
}

ConstraintSystem build_constraints(const BigRational& k) {
  if (k <= 0) throw DomainError("build_constraints: k must be positive");
  const BigRational inv_k = 1 / k;
  ConstraintSystem sys;
  sys.k = k;
  sys.constraints = {
      {1, "a(k) >= 1", {{"1", 1, 0, 0, 1}, {"1'", -1, 0, 0, 0}}},
      {2, "0 <= b(k) <= 4/(5k)", {{"2", 0, -1, 0, 0}, {"2'", 0, 1, 0, BigRational(4, 5) * inv_k}}},
      {3, "c(k) >= 0", {{"3", 0, 0, -1, 0}}},
      {4, "2b(k) - 1 <= -1/a(k)", {{"4", 1, 2, 0, 1}}},
      {5,
       "2b(k) + 2c(k) + (1 - 1/k)/4 <= 1/a(k)",
       {{"5", -1, 2, 2, -(1 - inv_k) / 4}}},
      {6,
       "-c(k) >= 1/2 - 1/(2k) - b(k)/4",
       {{"6", 0, BigRational(-1, 4), 1, inv_k / 2 - BigRational(1, 2)}}},
  };
  return sys;
}

LPSolution solve(const BigRational& k, Objective objective) {
  const std::vector<Inequality> rows = rows_for(k, objective);
  LPSolution sol;
  sol.k = k;
  const auto v = best_vertex(rows);
  if (!v) {
    sol.certificate = infeasibility_certificate(rows);
    return sol;
  }
  sol.feasible = true;
  sol.inv_a = v->x;
  sol.b = v->b;
  sol.c = v->c;
  for (const auto& r : rows) {
    if (r.slack(v->x, v->b, v->c) == 0) sol.active_constraints.push_back(r.id);
  }
  return sol;
}

ClosedForm closed_form(const BigRational& k) {
  if (k <= 0) throw DomainError("closed_form: k must be positive");
  return {(2 * k + 3) / (9 * k), (7 * k - 3) / (18 * k), (33 - 29 * k) / (72 * k)};
}

ClosedFormCheck verify_closed_form(const BigRational& k) {
  ClosedFormCheck out;
  out.value = closed_form(k);
  out.all_hold = true;
  for (const auto& r : build_constraints(k).rows()) {
    const BigRational s = r.slack(out.value.inv_a, out.value.b, out.value.c);
    out.slacks.emplace_back(r.id, s);
    if (s == 0) out.tight.push_back(r.id);
    if (s < 0) out.all_hold = false;
  }
  out.c_negative = out.value.c < 0;
  return out;
}

BigRational k_max() {
  // g(t) = optimal c without c >= 0 at k = 1/t is piecewise affine in t, so
  // a secant step between points on one piece lands on the root exactly.
  auto g = [](const BigRational& t) {
    const LPSolution s = solve(1 / t, Objective::free_c);
    if (!s.feasible) throw ConvergenceError("k_max: relaxed problem infeasible", 0, 0, 0);
    return s.c;
  };
  BigRational lo = 1;                   // t = 1/k with g > 0 (k = 1)
  BigRational hi = BigRational(1, 2);  // g < 0 (k = 2)
  BigRational glo = g(lo), ghi = g(hi);
  for (int iter = 0; iter < 200; ++iter) {
    const BigRational t = lo - glo * (hi - lo) / (ghi - glo);
    const BigRational gt = g(t);
    if (gt == 0) return 1 / t;
    const BigRational mid = (lo + hi) / 2;
    const BigRational gm = g(mid);
    if (gm == 0) return 1 / mid;
    // Keep the bracket tight: narrow with both the secant point and the midpoint.
    for (auto [p, gp] : {std::pair{t, gt}, std::pair{mid, gm}}) {
      if (gp > 0 && p < lo) {
        lo = p;
        glo = gp;
      } else if (gp < 0 && p > hi) {
        hi = p;
        ghi = gp;
      }
    }
  }
  throw ConvergenceError("k_max: root not isolated", 0, 0, 0);
}

}  // namespace dioph::optimizer
