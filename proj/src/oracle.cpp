#include "greenran/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "greenran/energy.hpp"
#include "greenran/error.hpp"

namespace greenran {

namespace {

struct Label {
  std::vector<double> battery;
  double cost = 0.0;
  std::uint32_t parent = 0;
  std::uint32_t split_choice = 0;
  std::uint64_t dispatch_code = 0;  // mixed radix over nodes
};

// Split choices are enumerated jointly over DUs: choice = sum_r combo_r * C^r,
// each combo a base-(F+1) number over the splittable types.
struct SplitEnumerator {
  std::size_t du_count;
  std::size_t splittable;
  std::size_t functions;
  std::size_t combos_per_du;
  std::size_t joint;

  SplitEnumerator(std::size_t r, std::size_t s, std::size_t f) : du_count(r), splittable(s), functions(f) {
    combos_per_du = 1;
    for (std::size_t k = 0; k < s; ++k) combos_per_du *= f + 1;
    joint = 1;
    for (std::size_t k = 0; k < r; ++k) joint *= combos_per_du;
  }

  std::vector<std::vector<std::size_t>> decode(std::size_t choice) const {
    std::vector<std::vector<std::size_t>> out(du_count, std::vector<std::size_t>(splittable));
    for (std::size_t r = 0; r < du_count; ++r) {
      std::size_t combo = choice % combos_per_du;
      choice /= combos_per_du;
      for (std::size_t k = splittable; k-- > 0;) {
        out[r][k] = combo % (functions + 1);
        combo /= functions + 1;
      }
    }
    return out;
  }
};

void check_limits(const OracleInstance& inst) {
  const auto& env = inst.env;
  env.validate();
  const auto& lim = inst.limits;
  if (env.du_count > lim.max_dus) {
    throw std::invalid_argument("oracle: instance too large (" + std::to_string(env.du_count) + " DUs, cap " +
                                std::to_string(lim.max_dus) + ")");
  }
  if (env.functions > lim.max_functions) {
    throw std::invalid_argument("oracle: instance too large (chain of " + std::to_string(env.functions) +
                                ", cap " + std::to_string(lim.max_functions) + ")");
  }
  if (env.horizon > lim.max_horizon) {
    throw std::invalid_argument("oracle: instance too large (horizon " + std::to_string(env.horizon) + ", cap " +
                                std::to_string(lim.max_horizon) + ")");
  }
  if (inst.data.loads.du_count() != env.du_count || inst.data.loads.type_count() != env.types.size() ||
      inst.data.loads.horizon() == 0 || inst.data.solar.size() != env.du_count + 1) {
    throw DataError("oracle: data shape does not match the instance");
  }
}

// Consumption of every node per (t, joint split choice), built exactly as the environment does.
std::vector<std::vector<std::vector<double>>> consumption_table(const OracleInstance& inst,
                                                                const SplitEnumerator& splits) {
  const auto& env = inst.env;
  const FunctionChain chain(env.functions);
  const auto splittable = env.splittable_types();
  std::vector<std::vector<std::vector<double>>> table(env.horizon);
  for (std::size_t t = 0; t < env.horizon; ++t) {
    const std::size_t dt = t % inst.data.loads.horizon();
    std::vector<std::vector<double>> loads;
    for (std::size_t r = 0; r < env.du_count; ++r) loads.push_back(inst.data.loads.loads_at(r, dt));
    table[t].resize(splits.joint);
    for (std::size_t j = 0; j < splits.joint; ++j) {
      const auto choice = splits.decode(j);
      std::vector<SplitVector> sv;
      for (std::size_t r = 0; r < env.du_count; ++r) {
        std::vector<std::size_t> points(env.types.size(), env.functions);
        for (std::size_t k = 0; k < splittable.size(); ++k) points[splittable[k]] = choice[r][k];
        sv.emplace_back(std::move(points));
      }
      auto& e = table[t][j];
      e.resize(env.du_count + 1);
      for (std::size_t r = 0; r < env.du_count; ++r) e[r] = du_energy(loads[r], sv[r], env.du_config(r), chain);
      e[env.du_count] = cu_energy(loads, sv, env.cu, chain);
    }
  }
  return table;
}

const NodeEnergyConfig& node_cfg(const EnvConfig& env, std::size_t n) {
  return n == env.du_count ? env.cu : env.du_config(n);
}

// Keeps labels not dominated by a cheaper-or-equal label holding at least as
// much energy at every node. Order of survivors is deterministic.
std::vector<Label> prune(std::vector<Label> cand) {
  std::stable_sort(cand.begin(), cand.end(), [](const Label& a, const Label& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return std::lexicographical_compare(b.battery.begin(), b.battery.end(), a.battery.begin(), a.battery.end());
  });
  std::vector<Label> kept;
  if (cand.empty()) return kept;
  const std::size_t dims = cand.front().battery.size();
  if (dims == 2) {
    // Staircase of kept (b0 -> b1), b1 strictly decreasing as b0 increases.
    std::map<double, double> stair;
    for (auto& c : cand) {
      const double x = c.battery[0];
      const double y = c.battery[1];
      auto it = stair.lower_bound(x);
      if (it != stair.end() && it->second >= y) continue;
      auto erase_from = stair.upper_bound(x);
      auto lo = erase_from;
      while (lo != stair.begin()) {
        auto prev = std::prev(lo);
        if (prev->second <= y) {
          lo = prev;
        } else {
          break;
        }
      }
      stair.erase(lo, erase_from);
      stair[x] = y;
      kept.push_back(std::move(c));
    }
    return kept;
  }
  for (auto& c : cand) {
    bool dominated = false;
    for (const auto& k : kept) {
      bool ge = true;
      for (std::size_t d = 0; d < dims && ge; ++d) ge = k.battery[d] >= c.battery[d];
      if (ge) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(c));
  }
  return kept;
}


// Lower bound on the cost still to come from (t, battery). Each node is
// relaxed on its own: cheapest split per step, any dispatch in [0, E], no
// capacity clip. Under those relaxations the best dispatch fills the
// priciest steps first subject to energy only being usable once generated.
class CostToGoBound {
 public:
  CostToGoBound(const OracleInstance& inst, const std::vector<std::vector<std::vector<double>>>& energy) {
    const auto& env = inst.env;
    nodes_ = env.du_count + 1;
    horizon_ = env.horizon;
    emin_.assign(horizon_, std::vector<double>(nodes_));
    gen_.assign(horizon_, std::vector<double>(nodes_));
    price_.resize(horizon_);
    for (std::size_t t = 0; t < horizon_; ++t) {
      price_[t] = env.tariff.price_at_hour(t % 24);
      for (std::size_t n = 0; n < nodes_; ++n) {
        double m = energy[t][0][n];
        for (const auto& e : energy[t]) m = std::min(m, e[n]);
        emin_[t][n] = m;
        gen_[t][n] = node_cfg(env, n).panel_size * inst.data.solar[n]->at(t);
      }
    }
    order_.resize(horizon_ + 1);
    for (std::size_t t = 0; t <= horizon_; ++t) {
      auto& o = order_[t];
      for (std::size_t s = t; s < horizon_; ++s) o.push_back(s);
      std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return price_[a] > price_[b]; });
    }
  }

  // Highest price from step t on; 0 past the horizon.
  double max_price(std::size_t t) const {
    double m = 0.0;
    for (std::size_t s = t; s < horizon_; ++s) m = std::max(m, price_[s]);
    return m;
  }

  // battery in kWh per node; t is the first step still to be paid for.
  double operator()(std::size_t t, const std::vector<double>& battery, double unit) const {
    double total = 0.0;
    std::vector<double> slack(horizon_);
    for (std::size_t n = 0; n < nodes_; ++n) {
      double acc = battery[n] * unit;
      for (std::size_t s = t; s < horizon_; ++s) {
        acc += gen_[s][n];
        slack[s] = acc;
      }
      for (std::size_t s : order_[t]) {
        double avail = emin_[s][n];
        for (std::size_t u = s; u < horizon_ && avail > 0.0; ++u) avail = std::min(avail, slack[u]);
        if (avail > 0.0) {
          for (std::size_t u = s; u < horizon_; ++u) slack[u] -= avail;
        } else {
          avail = 0.0;
        }
        total += price_[s] * (emin_[s][n] - avail);
      }
    }
    return total;
  }

 private:
  std::size_t nodes_ = 0;
  std::size_t horizon_ = 0;
  std::vector<std::vector<double>> emin_, gen_;
  std::vector<double> price_;
  std::vector<std::vector<std::size_t>> order_;
};

// Beam mode (beam > 0): keep the `beam` labels with the lowest cost plus bound.
// Exact mode: drop labels whose cost plus bound cannot undercut the incumbent.
std::vector<Label> bound_filter(std::vector<Label> layer, std::size_t t, const CostToGoBound& bound, double unit,
                                double incumbent, std::size_t beam) {
  std::vector<double> key(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) key[i] = layer[i].cost + bound(t, layer[i].battery, unit);
  std::vector<std::size_t> idx(layer.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (beam > 0) {
    if (idx.size() <= beam) return layer;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    idx.resize(beam);
    std::sort(idx.begin(), idx.end());
  } else {
    // Only labels that can still beat the incumbent schedule, which is kept
    // aside; the margin is far above the bound's own rounding.
    const double limit = incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
    std::erase_if(idx, [&](std::size_t i) { return !(key[i] < limit); });
  }
  std::vector<Label> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(std::move(layer[i]));
  return out;
}

// A label also loses to one that is cheaper by more than the most its extra
// stored energy could still save: copying the other label's actions with d kWh
// less in store dispatches at most d kWh less in total, each kWh worth at most
// the highest remaining price. Candidates are checked against a few elite
// labels (most valuable by cost minus stored-energy worth); the strict margin
// keeps ties.
std::vector<Label> value_filter(std::vector<Label> layer, double max_price) {
  constexpr std::size_t kElite = 32;
  if (layer.size() <= 1) return layer;
  std::vector<double> worth(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    double stored = 0.0;
    for (double b : layer[i].battery) stored += b;
    worth[i] = layer[i].cost - max_price * stored;
  }
  std::vector<std::size_t> elite(layer.size());
  std::iota(elite.begin(), elite.end(), std::size_t{0});
  const std::size_t k = std::min(kElite, elite.size());
  std::partial_sort(elite.begin(), elite.begin() + static_cast<std::ptrdiff_t>(k), elite.end(),
                    [&](std::size_t a, std::size_t b) { return worth[a] != worth[b] ? worth[a] < worth[b] : a < b; });
  elite.resize(k);
  std::vector<char> keep(layer.size(), 1);
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const Label& c = layer[i];
    const double margin = 1e-9 * std::max(1.0, std::abs(c.cost));
    bool beaten = false;
    for (std::size_t e : elite) {
      if (e == i) continue;
      const Label& a = layer[e];
      double deficit = 0.0;
      for (std::size_t n = 0; n < c.battery.size(); ++n) deficit += std::max(0.0, c.battery[n] - a.battery[n]);
      if (a.cost + max_price * deficit + margin < c.cost) {
        beaten = true;
        break;
      }
    }
    keep[i] = !beaten;
  }
  std::vector<Label> out;
  out.reserve(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (keep[i]) out.push_back(std::move(layer[i]));
  }
  return out;
}

[[noreturn]] void throw_too_large(std::size_t frontier, std::size_t t) {
  throw std::invalid_argument("oracle: instance too large (frontier of " + std::to_string(frontier) +
                              " schedules at t=" + std::to_string(t) + ")");
}

// Every filter of a layer ending at step t; `unit` converts label batteries to kWh.
std::vector<Label> reduce_layer(std::vector<Label> cand, std::size_t t, const CostToGoBound& bound, double unit,
                                double incumbent, std::size_t beam) {
  return bound_filter(value_filter(prune(std::move(cand)), bound.max_price(t + 1) * unit), t + 1, bound, unit,
                      incumbent, beam);
}

constexpr std::size_t kBeamWidth = 256;

// Result of an exact pass in which nothing could beat the incumbent.
OracleSolution unbeaten(std::size_t peak) {
  OracleSolution sol;
  sol.total_opex = std::numeric_limits<double>::infinity();
  sol.peak_frontier = peak;
  return sol;
}
constexpr double kNoIncumbent = std::numeric_limits<double>::infinity();

OracleSolution backtrack(const std::vector<std::vector<Label>>& layers, const SplitEnumerator& splits,
                         std::size_t nodes, std::size_t radix, std::size_t peak) {
  const auto& last = layers.back();
  std::size_t best = 0;
  for (std::size_t i = 1; i < last.size(); ++i) {
    if (last[i].cost < last[best].cost) best = i;
  }
  OracleSolution sol;
  sol.total_opex = last[best].cost;
  sol.peak_frontier = peak;
  const std::size_t horizon = layers.size() - 1;
  std::vector<const Label*> path(horizon);
  std::size_t idx = best;
  for (std::size_t t = horizon; t-- > 0;) {
    path[t] = &layers[t + 1][idx];
    idx = path[t]->parent;
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    sol.splits.push_back(splits.decode(path[t]->split_choice));
    std::vector<std::size_t> codes(nodes);
    std::uint64_t code = path[t]->dispatch_code;
    for (std::size_t n = 0; n < nodes; ++n) {
      codes[n] = static_cast<std::size_t>(code % radix);
      code /= radix;
    }
    std::vector<NodeAction> joint(nodes);
    for (std::size_t n = 0; n < nodes; ++n) {
      if (n + 1 < nodes) joint[n].splits = sol.splits.back()[n];
      joint[n].dispatch_level = codes[n];
    }
    sol.actions.push_back(std::move(joint));
  }
  return sol;
}

OracleSolution levels_pass(const OracleInstance& inst, double incumbent, std::size_t beam) {
  const auto& env = inst.env;
  const std::size_t nodes = env.du_count + 1;
  const SplitEnumerator splits(env.du_count, env.splittable_types().size(), env.functions);
  const auto energy = consumption_table(inst, splits);
  const CostToGoBound bound(inst, energy);
  const auto& levels = env.dispatch_levels;
  const std::size_t nl = levels.size();

  std::vector<std::vector<Label>> layers;
  Label root;
  for (std::size_t n = 0; n < nodes; ++n) {
    root.battery.push_back(env.initial_battery_fraction * node_cfg(env, n).battery_kwh);
  }
  layers.push_back({root});
  std::size_t peak = 1;

  std::vector<double> gen_unit(nodes);
  std::vector<double> panel(nodes), cap(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    panel[n] = node_cfg(env, n).panel_size;
    cap[n] = node_cfg(env, n).battery_kwh;
  }
  // Per node and level: dispatch and next battery for the label being expanded.
  std::vector<double> disp(nodes * nl), next_b(nodes * nl);
  std::vector<std::size_t> digit(nodes);
  std::vector<NodeDraw> du_draws(env.du_count);

  for (std::size_t t = 0; t < env.horizon; ++t) {
    for (std::size_t n = 0; n < nodes; ++n) gen_unit[n] = inst.data.solar[n]->at(t);
    const double price = env.tariff.price_at_hour(t % 24);
    std::vector<Label> cand;
    std::size_t prune_at = 4 * inst.limits.max_frontier;
    const auto& layer = layers.back();
    for (std::size_t li = 0; li < layer.size(); ++li) {
      const Label& lab = layer[li];
      for (std::size_t j = 0; j < splits.joint; ++j) {
        const auto& e = energy[t][j];
        for (std::size_t n = 0; n < nodes; ++n) {
          const BatteryState bs{lab.battery[n], cap[n], 0.0};
          const double fmax = feasible_dispatch_max(bs, panel[n], gen_unit[n], e[n]);
          for (std::size_t l = 0; l < nl; ++l) {
            const double p = levels[l] * fmax;
            disp[n * nl + l] = p;
            next_b[n * nl + l] = battery_step(bs, p, panel[n], gen_unit[n]).stored_kwh;
          }
        }
        std::fill(digit.begin(), digit.end(), 0);
        while (true) {
          for (std::size_t r = 0; r < env.du_count; ++r) du_draws[r] = {e[r], disp[r * nl + digit[r]]};
          const std::size_t cu = env.du_count;
          const double opex = step_opex({e[cu], disp[cu * nl + digit[cu]]}, du_draws, price);
          Label next;
          next.battery.resize(nodes);
          std::uint64_t code = 0;
          for (std::size_t n = nodes; n-- > 0;) {
            next.battery[n] = next_b[n * nl + digit[n]];
            code = code * nl + digit[n];
          }
          next.cost = lab.cost + opex;
          next.parent = static_cast<std::uint32_t>(li);
          next.split_choice = static_cast<std::uint32_t>(j);
          next.dispatch_code = code;
          cand.push_back(std::move(next));

          std::size_t k = 0;
          while (k < nodes && ++digit[k] == nl) digit[k++] = 0;
          if (k == nodes) break;
        }
      }
      if (cand.size() > prune_at) {
        cand = reduce_layer(std::move(cand), t, bound, 1.0, incumbent, beam);
        if (cand.size() > inst.limits.max_frontier) throw_too_large(cand.size(), t);
        prune_at = std::max(prune_at, 2 * cand.size());
      }
    }
    auto kept = reduce_layer(std::move(cand), t, bound, 1.0, incumbent, beam);
    if (kept.size() > inst.limits.max_frontier) throw_too_large(kept.size(), t);
    if (kept.empty()) return unbeaten(peak);
    peak = std::max(peak, kept.size());
    layers.push_back(std::move(kept));
  }

  auto sol = backtrack(layers, splits, nodes, nl, peak);
  // Dispatch amounts from a replay of the chosen levels.
  std::vector<BatteryState> bs(nodes);
  for (std::size_t n = 0; n < nodes; ++n) bs[n] = {root.battery[n], cap[n], 0.0};
  for (std::size_t t = 0; t < env.horizon; ++t) {
    std::size_t j = 0;
    for (std::size_t r = env.du_count; r-- > 0;) {
      std::size_t combo = 0;
      for (auto k : sol.splits[t][r]) combo = combo * (env.functions + 1) + k;
      j = j * splits.combos_per_du + combo;
    }
    std::vector<double> p(nodes);
    for (std::size_t n = 0; n < nodes; ++n) {
      const double g = inst.data.solar[n]->at(t);
      const double fmax = feasible_dispatch_max(bs[n], panel[n], g, energy[t][j][n]);
      p[n] = levels[sol.actions[t][n].dispatch_level] * fmax;
      bs[n] = battery_step(bs[n], p[n], panel[n], g);
    }
    sol.dispatch_kwh.push_back(std::move(p));
  }
  return sol;
}

long long to_units(double kwh, double step, const std::string& what) {
  const double q = kwh / step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
    throw std::invalid_argument("oracle: off-grid quantity " + what + " = " + std::to_string(kwh) +
                                " kWh is not a multiple of " + std::to_string(step));
  }
  return static_cast<long long>(r);
}

OracleSolution grid_pass(const OracleInstance& inst, double incumbent, std::size_t beam) {
  const auto& env = inst.env;
  const double step = inst.grid_step;
  if (!(step > 0.0)) throw std::invalid_argument("oracle: grid step must be > 0");
  const std::size_t nodes = env.du_count + 1;
  const SplitEnumerator splits(env.du_count, env.splittable_types().size(), env.functions);
  const auto energy = consumption_table(inst, splits);
  const CostToGoBound bound(inst, energy);

  std::vector<long long> cap(nodes);
  std::vector<std::vector<long long>> gen(env.horizon, std::vector<long long>(nodes));
  std::vector<std::vector<std::vector<long long>>> e_units(env.horizon);
  Label root;
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto& cfg = node_cfg(env, n);
    cap[n] = to_units(cfg.battery_kwh, step, "battery capacity");
    root.battery.push_back(static_cast<double>(
        to_units(env.initial_battery_fraction * cfg.battery_kwh, step, "initial battery")));
  }
  for (std::size_t t = 0; t < env.horizon; ++t) {
    for (std::size_t n = 0; n < nodes; ++n) {
      gen[t][n] = to_units(node_cfg(env, n).panel_size * inst.data.solar[n]->at(t), step,
                           "generation at t=" + std::to_string(t));
    }
    e_units[t].resize(splits.joint);
    for (std::size_t j = 0; j < splits.joint; ++j) {
      for (double e : energy[t][j]) e_units[t][j].push_back(to_units(e, step, "consumption at t=" + std::to_string(t)));
    }
  }

  std::vector<std::vector<Label>> layers{{root}};
  std::size_t peak = 1;
  // Battery levels are held as exact integer unit counts inside the doubles.
  std::vector<long long> fmax(nodes), pick(nodes);
  std::uint64_t radix = 1;
  for (const auto& per_t : e_units) {
    for (const auto& per_j : per_t) {
      for (long long e : per_j) radix = std::max<std::uint64_t>(radix, static_cast<std::uint64_t>(e) + 1);
    }
  }
  for (std::size_t t = 0; t < env.horizon; ++t) {
    const double price = env.tariff.price_at_hour(t % 24);
    std::vector<Label> cand;
    std::size_t prune_at = 4 * inst.limits.max_frontier;
    const auto& layer = layers.back();
    for (std::size_t li = 0; li < layer.size(); ++li) {
      const Label& lab = layer[li];
      for (std::size_t j = 0; j < splits.joint; ++j) {
        const auto& e = e_units[t][j];
        for (std::size_t n = 0; n < nodes; ++n) {
          fmax[n] = std::min(e[n], static_cast<long long>(lab.battery[n]) + gen[t][n]);
        }
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
          long long grid = 0;
          Label next;
          next.battery.resize(nodes);
          std::uint64_t code = 0;
          for (std::size_t n = nodes; n-- > 0;) {
            grid += e[n] - pick[n];
            const long long b = static_cast<long long>(lab.battery[n]) + gen[t][n] - pick[n];
            next.battery[n] = static_cast<double>(std::min(cap[n], b));
            code = code * radix + static_cast<std::uint64_t>(pick[n]);
          }
          next.cost = lab.cost + static_cast<double>(grid) * step * price;
          next.parent = static_cast<std::uint32_t>(li);
          next.split_choice = static_cast<std::uint32_t>(j);
          next.dispatch_code = code;
          cand.push_back(std::move(next));

          std::size_t k = 0;
          while (k < nodes && ++pick[k] > fmax[k]) pick[k++] = 0;
          if (k == nodes) break;
        }
      }
      if (cand.size() > prune_at) {
        cand = reduce_layer(std::move(cand), t, bound, step, incumbent, beam);
        if (cand.size() > inst.limits.max_frontier) throw_too_large(cand.size(), t);
        prune_at = std::max(prune_at, 2 * cand.size());
      }
    }
    auto kept = reduce_layer(std::move(cand), t, bound, step, incumbent, beam);
    if (kept.size() > inst.limits.max_frontier) throw_too_large(kept.size(), t);
    if (kept.empty()) return unbeaten(peak);
    peak = std::max(peak, kept.size());
    layers.push_back(std::move(kept));
  }

  auto sol = backtrack(layers, splits, nodes, static_cast<std::size_t>(radix), peak);
  for (auto& joint : sol.actions) {
    std::vector<double> p(nodes);
    for (std::size_t n = 0; n < nodes; ++n) p[n] = static_cast<double>(joint[n].dispatch_level) * step;
    sol.dispatch_kwh.push_back(std::move(p));
  }
  sol.actions.clear();
  return sol;
}

// A beam pass finds a good schedule; its cost then bounds the exact pass.
template <class Pass>
OracleSolution branch_and_bound(const OracleInstance& inst, Pass pass) {
  OracleSolution beam = pass(inst, kNoIncumbent, kBeamWidth);
  OracleSolution exact = pass(inst, beam.total_opex, 0);
  const std::size_t peak = std::max(beam.peak_frontier, exact.peak_frontier);
  OracleSolution& best = exact.total_opex < beam.total_opex ? exact : beam;
  best.peak_frontier = peak;
  return std::move(best);
}

}  // namespace

OracleSolution solve_oracle(const OracleInstance& instance) {
  check_limits(instance);
  return instance.mode == OracleMode::Levels ? branch_and_bound(instance, levels_pass)
                                              : branch_and_bound(instance, grid_pass);
}

}  // namespace greenran
