#include "devperf/miner.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "devperf/errors.hpp"

namespace devperf {

namespace {

using ItemSet = std::vector<uint32_t>;

bool is_frequent(uint64_t count, size_t n, double minsup) {
  return static_cast<double>(count) / static_cast<double>(n) >= minsup;
}

std::vector<double> subgroup_counts(const Bitmap& rows, const MiningTable& table) {
  std::vector<double> counts(table.universe.size(), 0.0);
  rows.for_each_set([&](size_t r) { counts[table.row_codes[r]] += 1.0; });
  return counts;
}

// rows(set) = AND of the member items' bitmaps
void materialize(const ItemSet& set, const MiningTable& table, Bitmap& out) {
  out = table.item_rows[set[0]];
  for (size_t i = 1; i < set.size(); ++i) out.assign_and(out, table.item_rows[set[i]]);
}

std::string condition(const Item& it) { return it.predictor + "=" + it.bin; }

std::string antecedent_text(const std::vector<Item>& ant) {
  std::string s;
  for (size_t i = 0; i < ant.size(); ++i) {
    if (i) s += " & ";
    s += condition(ant[i]);
  }
  return s;
}

void check_config(const MiningConfig& c) {
  if (!(c.minsup > 0.0 && c.minsup <= 1.0)) throw ConfigError("minsup must lie in (0, 1]");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (c.max_len < 1) throw ConfigError("max_len must be at least 1");
}

}  // namespace

MiningTable build_mining_table(const Dataset& dataset, const PredictionSet& preds,
                               const std::vector<BinScheme>& schemes, Diagnostics* diag) {
  if (preds.n() != dataset.n_rows)
    throw DataError("mining table: prediction set does not cover the dataset");
  Dataset disc = discretize(dataset, schemes, diag);

  MiningTable t;
  t.n_rows = disc.n_rows;
  OutcomeColumn oc = encode_outcomes(preds);
  t.universe = std::move(oc.universe);
  t.row_codes = std::move(oc.ids);
  t.global = count_outcomes(t.row_codes, t.universe);

  for (size_t c : disc.predictor_indices()) {
    const Column& col = disc.columns[c];
    uint32_t pred_ord = static_cast<uint32_t>(t.predictors.size());
    t.predictors.push_back(col.name);
    for (size_t k = 0; k < col.categories.size(); ++k) {
      t.items.push_back({col.name, col.categories[k]});
      t.item_predictor.push_back(pred_ord);
      Bitmap bm(disc.n_rows);
      for (size_t r = 0; r < disc.n_rows; ++r)
        if (col.codes[r] == static_cast<int32_t>(k)) bm.set(r);
      t.item_rows.push_back(std::move(bm));
    }
  }
  return t;
}

std::vector<DistributionRule> mine_rules(const MiningTable& table, const MiningConfig& config,
                                         MiningStats* stats) {
  check_config(config);
  if (table.n_rows == 0) throw DataError("mine_rules: empty table");

  auto note_eval = [&](const ItemSet& set) {
    if (!stats) return;
    ++stats->support_evaluations;
    if (stats->record_evaluated) stats->evaluated.push_back(set);
  };

  std::map<ItemSet, double> p_cache;
  std::vector<DistributionRule> rules;

  auto evaluate = [&](const ItemSet& set, const Bitmap& rows, uint64_t count) {
    std::vector<double> counts = subgroup_counts(rows, table);
    Chi2Gof gof = chi2_gof(counts, table.global.counts, config.pool_min_expected);
    p_cache.emplace(set, gof.p_value);
    if (stats) ++stats->frequent_itemsets;

    if (gof.p_value > config.alpha) return;
    if (config.improvement && set.size() > 1) {
      size_t L = set.size();
      for (uint32_t mask = 1; mask + 1 < (1u << L); ++mask) {
        ItemSet sub;
        for (size_t i = 0; i < L; ++i)
          if (mask & (1u << i)) sub.push_back(set[i]);
        auto it = p_cache.find(sub);
        if (it == p_cache.end() || !(gof.p_value < it->second)) return;
      }
    }
    DistributionRule r;
    for (uint32_t id : set) r.antecedent.push_back(table.items[id]);
    r.subgroup_size = static_cast<size_t>(count);
    r.support = static_cast<double>(count) / static_cast<double>(table.n_rows);
    r.distribution.counts = std::move(counts);
    r.distribution.total = static_cast<double>(count);
    r.p_value = gof.p_value;
    r.chi2_stat = gof.stat;
    r.df = gof.df;
    rules.push_back(std::move(r));
  };

  std::vector<ItemSet> prev;
  for (uint32_t i = 0; i < table.items.size(); ++i) {
    ItemSet set{i};
    note_eval(set);
    uint64_t count = table.item_rows[i].count();
    if (!is_frequent(count, table.n_rows, config.minsup)) continue;
    evaluate(set, table.item_rows[i], count);
    prev.push_back(std::move(set));
  }

  Bitmap bm_a, bm_cand;
  for (size_t level = 2; level <= config.max_len && prev.size() > 1; ++level) {
    std::set<ItemSet> prev_index(prev.begin(), prev.end());
    std::vector<ItemSet> cur;
    for (size_t i = 0; i < prev.size(); ++i) {
      bool have_a = false;
      for (size_t j = i + 1; j < prev.size(); ++j) {
        const ItemSet& a = prev[i];
        const ItemSet& b = prev[j];
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
        if (table.item_predictor[a.back()] == table.item_predictor[b.back()]) continue;

        ItemSet cand = a;
        cand.push_back(b.back());
        if (level > 2) {
          // the two join parents are already known frequent
          bool all_frequent = true;
          for (size_t drop = 0; drop + 2 < cand.size() && all_frequent; ++drop) {
            ItemSet sub = cand;
            sub.erase(sub.begin() + static_cast<long>(drop));
            all_frequent = prev_index.count(sub) > 0;
          }
          if (!all_frequent) continue;
        }

        if (!have_a) {
          materialize(a, table, bm_a);
          have_a = true;
        }
        note_eval(cand);
        uint64_t count = bm_cand.assign_and(bm_a, table.item_rows[b.back()]);
        if (!is_frequent(count, table.n_rows, config.minsup)) continue;
        evaluate(cand, bm_cand, count);
        cur.push_back(std::move(cand));
      }
    }
    prev = std::move(cur);
  }

  std::stable_sort(rules.begin(), rules.end(),
                   [](const DistributionRule& x, const DistributionRule& y) {
                     if (x.p_value != y.p_value) return x.p_value < y.p_value;
                     if (x.antecedent.size() != y.antecedent.size())
                       return x.antecedent.size() < y.antecedent.size();
                     return antecedent_text(x.antecedent) < antecedent_text(y.antecedent);
                   });
  return rules;
}

SubgroupResult query_subgroup(const MiningTable& table, std::span<const Item> antecedent,
                              double pool_min_expected) {
  SubgroupResult out;
  Bitmap rows(table.n_rows);
  if (antecedent.empty()) {
    for (size_t r = 0; r < table.n_rows; ++r) rows.set(r);
  } else {
    bool first = true;
    for (const Item& it : antecedent) {
      size_t id = table.items.size();
      for (size_t k = 0; k < table.items.size(); ++k)
        if (table.items[k] == it) {
          id = k;
          break;
        }
      if (id == table.items.size())
        throw ConfigError("unknown condition '" + condition(it) + "'");
      if (first) {
        rows = table.item_rows[id];
        first = false;
      } else {
        rows.assign_and(rows, table.item_rows[id]);
      }
    }
  }

  uint64_t count = rows.count();
  out.size = static_cast<size_t>(count);
  out.support = static_cast<double>(count) / static_cast<double>(table.n_rows);
  out.distribution.counts.assign(table.universe.size(), 0.0);
  if (count == 0) {
    out.empty = true;
    return out;
  }
  out.distribution.counts = subgroup_counts(rows, table);
  out.distribution.total = static_cast<double>(count);
  Chi2Gof gof = chi2_gof(out.distribution.counts, table.global.counts, pool_min_expected);
  out.p_value = gof.p_value;
  out.chi2_stat = gof.stat;
  out.df = gof.df;
  return out;
}

std::string format_rule(const DistributionRule& rule, const CodeUniverse& universe) {
  char head[96];
  std::snprintf(head, sizeof head, "Ant sup = %.5f  pvalue = %.22f", rule.support, rule.p_value);
  std::string s = head;
  s += '\n';
  s += cm_string(rule.distribution, universe);
  s += "  <--  ";
  s += antecedent_text(rule.antecedent);
  s += '\n';
  return s;
}

std::string format_rules(std::span<const DistributionRule> rules, const CodeUniverse& universe) {
  std::string s;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (i) s += '\n';
    s += format_rule(rules[i], universe);
  }
  return s;
}

std::string rules_to_json(std::span<const DistributionRule> rules, const CodeUniverse& universe) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rules) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json ant = nlohmann::ordered_json::array();
    for (const Item& it : r.antecedent) ant.push_back({{"pred", it.predictor}, {"bin", it.bin}});
    j["antecedent"] = std::move(ant);
    j["support"] = r.support;
    j["size"] = r.subgroup_size;
    j["pvalue"] = r.p_value;
    j["chi2"] = r.chi2_stat;
    j["df"] = r.df;
    nlohmann::ordered_json cm;
    std::vector<double> props = r.distribution.proportions();
    for (size_t i = 0; i < universe.size(); ++i)
      if (r.distribution.counts[i] > 0) cm[universe.codes[i]] = props[i];
    j["cm"] = std::move(cm);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::vector<Item> parse_antecedent(const std::string& text) {
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, e - b + 1);
  };
  std::vector<Item> items;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t amp = text.find('&', pos);
    std::string part = trim(text.substr(pos, amp == std::string::npos ? amp : amp - pos));
    if (!part.empty()) {
      size_t eq = part.find('=');
      if (eq == std::string::npos)
        throw ConfigError("bad condition '" + part + "' (expected predictor=bin)");
      Item it{trim(part.substr(0, eq)), trim(part.substr(eq + 1))};
      if (it.predictor.empty() || it.bin.empty())
        throw ConfigError("bad condition '" + part + "' (expected predictor=bin)");
      items.push_back(std::move(it));
    } else if (!items.empty() || amp != std::string::npos) {
      throw ConfigError("empty condition in antecedent");
    }
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return items;
}

}  // namespace devperf
