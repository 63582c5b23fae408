// The dynamic G24 test family (22 instances).
//
// All instances live on the box [0,3] x [0,4] and derive from the static g24
// problem (min -(x1+x2) subject to two quartic inequality constraints;
// optimum f* = -5.508013 at x* = (2.3295, 3.1785)).  The dynamic family
// (Nguyen & Yao's G24 set, plus the v/w variants introduced by Bu et al.)
// varies the objective coefficients and/or displaces the constraint
// boundaries as the time index t advances.
//
// The original sources leave several knobs open (exact per-period schedules,
// the v/w region-splitting parameters).  The choices made here, recorded
// next to each instance, reproduce the family's documented behaviour:
//   - the baseline objective coefficient is sin(k*pi*t + pi/2), so with the
//     default k = 0.5 the optimum direction cycles with period 4;
//   - dynamic constraints displace the feasible ceiling along x2 linearly in
//     t, travelling S/10 units over a full run (with the default S = 20 and
//     ten periods, G24_7's feasible region shrinks from ~44% of the box to
//     ~7%, matching this instance's documented shrink, and the G24_3 group
//     starts at the ~7% region and recovers to ~44%);
//   - the v/w variants gate the G24_3 region through a cosine comb,
//     cos(m*pi*x1) <= 0.2, with m = 2 ("v": three feasible bands) and m = 4
//     ("w": six narrower bands).

#include <cmath>
#include <numbers>

#include "problems.hpp"

namespace dcop {
namespace {

constexpr double kPi = std::numbers::pi;

SearchSpace g24_box() {
  return SearchSpace{{0.0, 0.0}, {3.0, 4.0}};
}

// Baseline objective coefficient: sin(k*pi*t + pi/2) = cos(k*pi*t).
double p_sin(double k, int t) { return std::sin(k * kPi * t + kPi / 2.0); }

// Alternating coefficients: p1 and p2 take turns updating, one per period.
// Closed form of the usual recursive definition; p2 starts at 1.
double p_alt1(double k, int t) {
  return std::sin(k * kPi * std::floor(t / 2.0) + kPi / 2.0);
}
double p_alt2(double k, int t) {
  if (t == 0) return 1.0;
  return std::sin(k * kPi * std::floor((t - 1) / 2.0) + kPi / 2.0);
}

// Static g24 constraint pair, written on transformed coordinates (y1, y2).
double quartic_g1(double y1, double y2) {
  return -2.0 * std::pow(y1, 4) + 8.0 * std::pow(y1, 3) -
         8.0 * std::pow(y1, 2) + y2 - 2.0;
}
double quartic_g2(double y1, double y2) {
  return -4.0 * std::pow(y1, 4) + 32.0 * std::pow(y1, 3) -
         88.0 * std::pow(y1, 2) + 96.0 * y1 + y2 - 36.0;
}

// Linear constraint travel: 0 at the first period, S/10 at the last.
double shrink_shift(const DynamicParams& dyn, int t) {
  if (dyn.num_periods <= 1) return 0.0;
  return (dyn.constraint_severity_s / 10.0) * t / (dyn.num_periods - 1);
}

// The G24_3 group runs the same travel in reverse: the region starts small
// (ceiling depressed by 2) and recovers as t advances.
double grow_shift(const DynamicParams& dyn, int t) {
  return 2.0 - shrink_shift(dyn, t);
}

using ShiftFn = double (*)(const DynamicParams&, int);

std::vector<Problem::Fn> quartic_constraints(const DynamicParams& dyn,
                                             ShiftFn shift) {
  auto g1 = [dyn, shift](std::span<const double> x, int t) {
    return quartic_g1(x[0], x[1] + (shift ? shift(dyn, t) : 0.0));
  };
  auto g2 = [dyn, shift](std::span<const double> x, int t) {
    return quartic_g2(x[0], x[1] + (shift ? shift(dyn, t) : 0.0));
  };
  return {g1, g2};
}

// Frozen snapshot of the G24_3 group's first period.
std::vector<Problem::Fn> quartic_constraints_frozen(double shift) {
  auto g1 = [shift](std::span<const double> x, int) {
    return quartic_g1(x[0], x[1] + shift);
  };
  auto g2 = [shift](std::span<const double> x, int) {
    return quartic_g2(x[0], x[1] + shift);
  };
  return {g1, g2};
}

// Band gate: feasible iff x1 <= a or x1 >= b (two full-height bands).
Problem::Fn band_gate(double a, double b) {
  return [a, b](std::span<const double> x, int) {
    return (x[0] - a) * (b - x[0]);
  };
}

// Band gate softened by a floor corridor: feasible in the bands or wherever
// x2 <= level, which joins the bands into one connected region.
Problem::Fn band_gate_with_corridor(double a, double b, double level) {
  return [a, b, level](std::span<const double> x, int) {
    return std::min((x[0] - a) * (b - x[0]), x[1] - level);
  };
}

// Cosine comb (Bu-style region splitting): feasible iff cos(m*pi*x1) <= c.
constexpr double kCombLevel = 0.2;
Problem::Fn comb_gate(int m) {
  return [m](std::span<const double> x, int) {
    return std::cos(m * kPi * x[0]) - kCombLevel;
  };
}

Problem::Fn linear_objective_dynamic_x1(const DynamicParams& dyn) {
  const double k = dyn.objective_severity_k;
  return [k](std::span<const double> x, int t) {
    return -(p_sin(k, t) * x[0] + x[1]);
  };
}

Problem::Fn linear_objective_static() {
  return [](std::span<const double> x, int) { return -(x[0] + x[1]); };
}

Problem::Fn linear_objective_alternating(const DynamicParams& dyn) {
  const double k = dyn.objective_severity_k;
  return [k](std::span<const double> x, int t) {
    return -(p_alt1(k, t) * x[0] + p_alt2(k, t) * x[1]);
  };
}

// Moving-bowl objective for the 8-group: a paraboloid whose minimum orbits
// an ellipse strictly inside the box, so the unconstrained optimum never
// touches the search boundary.
Problem::Fn bowl_objective(const DynamicParams& dyn) {
  const double k = dyn.objective_severity_k;
  return [k](std::span<const double> x, int t) {
    const double z1 = 1.5 + 1.2 * std::cos(k * kPi * t);
    const double z2 = 2.0 + 1.5 * std::sin(k * kPi * t);
    const double d1 = x[0] - z1;
    const double d2 = x[1] - z2;
    return d1 * d1 + d2 * d2 - 5.0;
  };
}

}  // namespace

const std::vector<std::string>& instance_ids() {
  static const std::vector<std::string> ids = {
      "G24_u",  "G24_1",   "G24_f",  "G24_uf",  "G24_2",  "G24_2u",
      "G24_3",  "G24_3b",  "G24_3f", "G24_4",   "G24_5",  "G24_6a",
      "G24_6b", "G24_6c",  "G24_6d", "G24_7",   "G24_8a", "G24_8b",
      "G24v_3", "G24v_3b", "G24w_3", "G24w_3b"};
  return ids;
}

bool is_known_instance(std::string_view id) {
  for (const auto& known : instance_ids()) {
    if (known == id) return true;
  }
  return false;
}

Problem make_instance(std::string_view id, const DynamicParams& dynamics) {
  dynamics.validate();
  const auto box = g24_box();
  const std::string name(id);

  // G24_u: dynamic objective, unconstrained.
  if (id == "G24_u") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   {}, {});
  }
  // G24_1: dynamic objective over the static g24 constraints; the optimum
  // stays on a constraint boundary.
  if (id == "G24_1") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   quartic_constraints(dynamics, nullptr), {});
  }
  // G24_f: the static g24 problem (fixed objective, fixed constraints).
  if (id == "G24_f") {
    return Problem(name, box, dynamics, linear_objective_static(),
                   quartic_constraints(dynamics, nullptr), {});
  }
  // G24_uf: fixed objective, unconstrained; optimum pinned at (3,4), f=-7.
  if (id == "G24_uf") {
    return Problem(name, box, dynamics, linear_objective_static(), {}, {});
  }
  // G24_2: the two objective coefficients alternate updates, so some periods
  // present a flat or ridge-shaped landscape.
  if (id == "G24_2") {
    return Problem(name, box, dynamics, linear_objective_alternating(dynamics),
                   quartic_constraints(dynamics, nullptr), {});
  }
  if (id == "G24_2u") {
    return Problem(name, box, dynamics, linear_objective_alternating(dynamics),
                   {}, {});
  }
  // G24_3: fixed objective; the feasible region starts at its smallest and
  // enlarges every period, so better optima keep appearing.
  if (id == "G24_3") {
    return Problem(name, box, dynamics, linear_objective_static(),
                   quartic_constraints(dynamics, grow_shift), {});
  }
  // G24_3b: G24_3's enlarging region plus the dynamic objective.
  if (id == "G24_3b") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   quartic_constraints(dynamics, grow_shift), {});
  }
  // G24_3f: G24_3 frozen at its first period (small static region, ~7% of
  // the box under default severity).
  if (id == "G24_3f") {
    return Problem(name, box, dynamics, linear_objective_static(),
                   quartic_constraints_frozen(2.0), {});
  }
  // G24_4: dynamic objective over a shrinking region; the optimum rides the
  // descending constraint boundary.
  if (id == "G24_4") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   quartic_constraints(dynamics, shrink_shift), {});
  }
  // G24_5: alternating objective over the shrinking region (pairs with
  // G24_4 the way G24_2 pairs with G24_1).
  if (id == "G24_5") {
    return Problem(name, box, dynamics, linear_objective_alternating(dynamics),
                   quartic_constraints(dynamics, shrink_shift), {});
  }
  // G24_6 group: dynamic objective whose optimum flips between the upper
  // corners of the box; the gates below set how the feasible region is cut.
  //   6a: two narrow bands, wide infeasible gap (hard to cross);
  //   6b: one large connected region (bands joined below x2 = 2);
  //   6c: two wide bands, narrow gap;
  //   6d: 6a's bands joined by a low corridor (x2 <= 0.5).
  if (id == "G24_6a") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   {band_gate(0.5, 2.5)}, {});
  }
  if (id == "G24_6b") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   {band_gate_with_corridor(1.0, 2.0, 2.0)}, {});
  }
  if (id == "G24_6c") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   {band_gate(1.0, 2.0)}, {});
  }
  if (id == "G24_6d") {
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   {band_gate_with_corridor(0.5, 2.5, 0.5)}, {});
  }
  // G24_7: fixed objective over the shrinking region; the feasible fraction
  // falls from ~44% of the box to ~7% across the default schedule.
  if (id == "G24_7") {
    return Problem(name, box, dynamics, linear_objective_static(),
                   quartic_constraints(dynamics, shrink_shift), {});
  }
  // G24_8a: moving-bowl objective, unconstrained; the optimum (f = -5) stays
  // strictly inside the box.
  if (id == "G24_8a") {
    return Problem(name, box, dynamics, bowl_objective(dynamics), {}, {});
  }
  // G24_8b: the moving bowl over the static g24 constraints; the bowl centre
  // is infeasible in most periods, pushing the optimum onto a boundary.
  if (id == "G24_8b") {
    return Problem(name, box, dynamics, bowl_objective(dynamics),
                   quartic_constraints(dynamics, nullptr), {});
  }
  // Bu-style variants: the G24_3 pair gated through a cosine comb that
  // splits the region into disconnected bands.  m = 2 -> three bands ("v"),
  // m = 4 -> six narrower bands ("w"); comb level 0.2 sets the band widths.
  if (id == "G24v_3") {
    auto constraints = quartic_constraints(dynamics, grow_shift);
    constraints.push_back(comb_gate(2));
    return Problem(name, box, dynamics, linear_objective_static(),
                   std::move(constraints), {});
  }
  if (id == "G24v_3b") {
    auto constraints = quartic_constraints(dynamics, grow_shift);
    constraints.push_back(comb_gate(2));
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   std::move(constraints), {});
  }
  if (id == "G24w_3") {
    auto constraints = quartic_constraints(dynamics, grow_shift);
    constraints.push_back(comb_gate(4));
    return Problem(name, box, dynamics, linear_objective_static(),
                   std::move(constraints), {});
  }
  if (id == "G24w_3b") {
    auto constraints = quartic_constraints(dynamics, grow_shift);
    constraints.push_back(comb_gate(4));
    return Problem(name, box, dynamics, linear_objective_dynamic_x1(dynamics),
                   std::move(constraints), {});
  }

  throw UnknownInstance(name);
}

}  // namespace dcop
