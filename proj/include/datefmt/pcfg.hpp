#pragma once

// Probabilistic parsing over the binarized date-time grammar: k-best CYK
// chart parsing, supervised rule-probability estimation, parse-tree to
// format-string conversion and the two-pass dominant-pattern resolver.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "datefmt/corpus.hpp"
#include "datefmt/dateparse.hpp"
#include "datefmt/detection.hpp"
#include "datefmt/grammar.hpp"

namespace datefmt {

// Day-month disambiguation weight: days that cannot be months are certain.
inline double day_guard_weight(long value) { return value > 12 ? 1.0 : 0.5; }

struct ParseTree {
  int symbol = -1;    // original nonterminal id; -1 for token leaves
  int rule = -1;      // original rule index; -1 for leaves
  int terminal = -1;  // leaves: terminal id
  int token = -1;     // leaves: token position
  long value = 0;     // leaves: matched value
  std::string text;   // leaves: token text
  double prob = 1.0;  // subtree probability including lexical weights
  std::vector<ParseTree> children;

  bool leaf() const { return symbol < 0; }
};

namespace detail {

inline void tree_signature(const ParseTree& t, std::vector<long>& out) {
  if (t.leaf()) {
    out.push_back(-1000 - t.terminal);
    out.push_back(t.token);
    return;
  }
  out.push_back(t.rule);
  for (const auto& c : t.children) tree_signature(c, out);
}

}  // namespace detail

// prob desc, then preorder rule-id sequence asc; a deterministic total
// order on parse trees.
inline bool tree_order(const ParseTree& a, const ParseTree& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  std::vector<long> sa, sb;
  detail::tree_signature(a, sa);
  detail::tree_signature(b, sb);
  return sa < sb;
}

inline double recomputed_tree_probability(const ParseTree& t,
                                          const Grammar& g) {
  double p = 1.0;
  if (t.rule >= 0) {
    p *= g.rules[t.rule].prob;
    if (g.rules[t.rule].day_weighted && t.children.size() == 1 &&
        t.children[0].leaf())
      p *= day_guard_weight(t.children[0].value);
  }
  for (const auto& c : t.children) p *= recomputed_tree_probability(c, g);
  return p;
}

namespace detail {

struct ChartItem {
  double prob = 0.0;
  int kind = 0;  // 0 lex, 1 unary, 2 binary
  int ridx = 0;  // index into bin->lex / bin->un / bin->bin
  int split = -1;
  int li = -1, ri = -1;  // backing-store indices in the child cells
  SemFields fields;
  long value = 0;
};

class CykChart {
 public:
  CykChart(const std::vector<LexedToken>& tokens, const Grammar& g,
           const LocaleSpec& loc, int k)
      : toks_(tokens), g_(g), loc_(loc), k_(std::max(1, k)) {
    n_ = tokens.size();
    total_nts_ = static_cast<int>(g.nts.size() + g.bin->extra_nts.size());
    cells_.resize(n_ * (n_ + 1));
  }

  std::vector<ParseTree> parse() {
    if (n_ == 0 || !g_.bin) return {};
    for (size_t i = 0; i < n_; ++i) fill_leaf(i);
    for (size_t len = 2; len <= n_; ++len)
      for (size_t i = 0; i + len <= n_; ++i) fill_span(i, i + len);
    std::vector<ParseTree> trees;
    for (int idx : top(0, n_, g_.start)) {
      ParseTree t = build(0, n_, g_.start, idx);
      t.prob = item(0, n_, g_.start, idx).prob;
      trees.push_back(std::move(t));
    }
    std::stable_sort(trees.begin(), trees.end(), tree_order);
    if (trees.size() > static_cast<size_t>(k_)) trees.resize(k_);
    return trees;
  }

 private:
  struct Cell {
    // append-only backing store per nonterminal + sorted top-k index list
    std::map<int, std::vector<ChartItem>> items;
    std::map<int, std::vector<int>> tops;
  };

  Cell& cell(size_t i, size_t j) { return cells_[i * (n_ + 1) + j]; }

  const ChartItem& item(size_t i, size_t j, int nt, int idx) {
    return cell(i, j).items[nt][idx];
  }
  const std::vector<int>& top(size_t i, size_t j, int nt) {
    static const std::vector<int> empty;
    auto& c = cell(i, j);
    auto it = c.tops.find(nt);
    return it == c.tops.end() ? empty : it->second;
  }

  bool leaf_ok(const Rule& r, long v) {
    if (r.lo <= r.hi && (v < r.lo || v > r.hi)) return false;
    if (r.slot == Slot::Offset4 && (v / 100 > 14 || v % 100 > 59))
      return false;
    return true;
  }

  void apply_slot(SemFields& f, Slot slot, long v) {
    switch (slot) {
      case Slot::Year2: f.year = two_digit_year_pivot(static_cast<int>(v)); break;
      case Slot::Year4: f.year = static_cast<int>(v); break;
      case Slot::Month: f.month = static_cast<int>(v); break;
      case Slot::Day: f.day = static_cast<int>(v); break;
      default: break;
    }
  }

  void fill_leaf(size_t i) {
    Cell& c = cell(i, i + 1);
    const LexedToken& tok = toks_[i];
    for (size_t li = 0; li < g_.bin->lex.size(); ++li) {
      const BinLex& lr = g_.bin->lex[li];
      auto v = match_terminal(g_.terms[lr.term], tok, loc_);
      if (!v) continue;
      double p = lr.prob;
      SemFields f;
      if (lr.orig >= 0) {
        const Rule& r = g_.rules[lr.orig];
        if (!leaf_ok(r, *v)) continue;
        if (r.day_weighted) p *= day_guard_weight(*v);
        apply_slot(f, r.slot, *v);
      }
      ChartItem it;
      it.prob = p;
      it.kind = 0;
      it.ridx = static_cast<int>(li);
      it.fields = f;
      it.value = *v;
      c.items[lr.lhs].push_back(it);
    }
    close_and_rank(i, i + 1);
  }

  void fill_span(size_t i, size_t j) {
    Cell& c = cell(i, j);
    for (size_t bi = 0; bi < g_.bin->bin.size(); ++bi) {
      const BinBin& br = g_.bin->bin[bi];
      bool guard = br.orig >= 0 && g_.rules[br.orig].date_guard;
      for (size_t s = i + 1; s < j; ++s) {
        const auto& lt = top(i, s, br.a);
        if (lt.empty()) continue;
        const auto& rt = top(s, j, br.b);
        if (rt.empty()) continue;
        for (int la : lt) {
          const ChartItem& L = item(i, s, br.a, la);
          for (int rb : rt) {
            const ChartItem& R = item(s, j, br.b, rb);
            SemFields f = L.fields;
            f.merge(R.fields);
            if (guard && !g_.check_date_guard(f)) continue;
            ChartItem it;
            it.prob = br.prob * L.prob * R.prob;
            it.kind = 2;
            it.ridx = static_cast<int>(bi);
            it.split = static_cast<int>(s);
            it.li = la;
            it.ri = rb;
            it.fields = f;
            c.items[br.lhs].push_back(it);
          }
        }
      }
    }
    close_and_rank(i, j);
  }

  // Unary closure then per-nonterminal top-k ranking. The backing store is
  // append-only so stored child indices stay valid.
  void close_and_rank(size_t i, size_t j) {
    Cell& c = cell(i, j);
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (size_t ui = 0; ui < g_.bin->un.size(); ++ui) {
        const BinUn& ur = g_.bin->un[ui];
        if (ur.lhs == ur.child) continue;
        auto child_it = c.items.find(ur.child);
        if (child_it == c.items.end()) continue;
        size_t child_count = child_it->second.size();
        for (size_t ci = 0; ci < child_count; ++ci) {
          // skip pairs already expanded in earlier passes
          bool dup = false;
          for (const auto& existing : c.items[ur.lhs])
            if (existing.kind == 1 &&
                existing.ridx == static_cast<int>(ui) &&
                existing.li == static_cast<int>(ci)) {
              dup = true;
              break;
            }
          if (dup) continue;
          const ChartItem& ch = c.items[ur.child][ci];
          ChartItem it;
          it.prob = ur.prob * ch.prob;
          it.kind = 1;
          it.ridx = static_cast<int>(ui);
          it.li = static_cast<int>(ci);
          it.fields = ch.fields;
          c.items[ur.lhs].push_back(it);
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (auto& [ntid, vec] : c.items) {
      std::vector<int> order(vec.size());
      for (size_t x = 0; x < vec.size(); ++x) order[x] = static_cast<int>(x);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (vec[a].prob != vec[b].prob) return vec[a].prob > vec[b].prob;
        std::vector<long> sa, sb;
        signature(i, j, ntid, a, sa);
        signature(i, j, ntid, b, sb);
        return sa < sb;
      });
      if (order.size() > static_cast<size_t>(k_)) order.resize(k_);
      c.tops[ntid] = std::move(order);
    }
  }

  void signature(size_t i, size_t j, int nt, int idx, std::vector<long>& out) {
    const ChartItem& it = item(i, j, nt, idx);
    if (it.kind == 0) {
      out.push_back(-1000 - g_.bin->lex[it.ridx].term);
      out.push_back(static_cast<long>(i));
      return;
    }
    if (it.kind == 1) {
      const BinUn& ur = g_.bin->un[it.ridx];
      out.push_back(100000 + it.ridx);
      signature(i, j, ur.child, it.li, out);
      return;
    }
    const BinBin& br = g_.bin->bin[it.ridx];
    out.push_back(200000 + it.ridx);
    out.push_back(it.split);
    signature(i, static_cast<size_t>(it.split), br.a, it.li, out);
    signature(static_cast<size_t>(it.split), j, br.b, it.ri, out);
  }

  ParseTree leaf_node(size_t pos, int term) {
    ParseTree leaf;
    leaf.symbol = -1;
    leaf.terminal = term;
    leaf.token = static_cast<int>(pos);
    leaf.text = toks_[pos].text;
    auto v = match_terminal(g_.terms[term], toks_[pos], loc_);
    leaf.value = v ? *v : 0;
    return leaf;
  }

  bool is_original_nt(int ntid) const {
    return ntid < static_cast<int>(g_.nts.size());
  }

  // Debinarize: introduced and wrapper symbols dissolve into their parent's
  // child list, so trees reference original rules only.
  void collect(size_t i, size_t j, int nt, int idx,
               std::vector<ParseTree>& out) {
    const ChartItem it = item(i, j, nt, idx);
    if (it.kind == 0) {
      const BinLex& lr = g_.bin->lex[it.ridx];
      if (lr.orig >= 0 && is_original_nt(lr.lhs)) {
        out.push_back(build(i, j, nt, idx));
      } else {
        out.push_back(leaf_node(i, lr.term));
      }
      return;
    }
    if (it.kind == 1) {
      out.push_back(build(i, j, nt, idx));
      return;
    }
    const BinBin& br = g_.bin->bin[it.ridx];
    if (br.orig >= 0 && is_original_nt(br.lhs)) {
      out.push_back(build(i, j, nt, idx));
      return;
    }
    // intro symbol: splice children
    collect(i, static_cast<size_t>(it.split), br.a, it.li, out);
    collect(static_cast<size_t>(it.split), j, br.b, it.ri, out);
  }

  ParseTree build(size_t i, size_t j, int nt, int idx) {
    const ChartItem it = item(i, j, nt, idx);
    ParseTree node;
    node.prob = it.prob;
    if (it.kind == 0) {
      const BinLex& lr = g_.bin->lex[it.ridx];
      node.symbol = lr.lhs;
      node.rule = lr.orig;
      node.children.push_back(leaf_node(i, lr.term));
      return node;
    }
    if (it.kind == 1) {
      const BinUn& ur = g_.bin->un[it.ridx];
      node.symbol = ur.lhs;
      node.rule = ur.orig;
      std::vector<ParseTree> kids;
      collect(i, j, ur.child, it.li, kids);
      node.children = std::move(kids);
      return node;
    }
    const BinBin& br = g_.bin->bin[it.ridx];
    node.symbol = br.lhs;
    node.rule = br.orig;
    std::vector<ParseTree> kids;
    collect(i, static_cast<size_t>(it.split), br.a, it.li, kids);
    collect(static_cast<size_t>(it.split), j, br.b, it.ri, kids);
    node.children = std::move(kids);
    return node;
  }

  const std::vector<LexedToken>& toks_;
  const Grammar& g_;
  const LocaleSpec& loc_;
  int k_;
  size_t n_ = 0;
  int total_nts_ = 0;
  std::vector<Cell> cells_;
};

}  // namespace detail

// All complete parses of the token span rooted at the start symbol, ranked
// by descending tree probability, truncated to k.
inline std::vector<ParseTree> cyk_parse(const std::vector<LexedToken>& tokens,
                                        const Grammar& grammar, int k,
                                        const LocaleSpec& loc) {
  if (!grammar.bin)
    throw std::invalid_argument("cyk_parse requires a binarized grammar");
  detail::CykChart chart(tokens, grammar, loc, k);
  return chart.parse();
}

inline std::vector<ParseTree> cyk_parse(const std::vector<LexedToken>& tokens,
                                        const Grammar& grammar, int k = 16) {
  return cyk_parse(tokens, grammar, k, english_locale());
}

// --- probabilities -----------------------------------------------------

// Untrained prior weights normalized per left-hand side.
inline void default_weights(Grammar& g) {
  normalize_probabilities(g);
  refresh_binarized(g);
}

inline constexpr double kUnseenRuleFloor = 1e-6;

// Maximum-likelihood estimation from correct parse trees:
// p(X -> beta) = Count(X -> beta) / Count(X), with a smoothed floor for
// rules of a seen nonterminal that never occurred, then renormalization.
inline void train(Grammar& g, const std::vector<ParseTree>& trees) {
  if (trees.empty()) throw std::invalid_argument("empty training set");
  std::vector<double> count(g.rules.size(), 0.0);
  std::map<int, double> lhs_total;
  auto walk = [&](auto&& self, const ParseTree& t) -> void {
    if (t.rule >= 0) {
      count[t.rule] += 1.0;
      lhs_total[g.rules[t.rule].lhs] += 1.0;
    }
    for (const auto& c : t.children) self(self, c);
  };
  for (const auto& t : trees) walk(walk, t);
  for (size_t i = 0; i < g.rules.size(); ++i) {
    auto it = lhs_total.find(g.rules[i].lhs);
    if (it == lhs_total.end()) continue;  // nonterminal unseen: keep priors
    double p = count[i] / it->second;
    g.rules[i].prob = std::max(p, kUnseenRuleFloor);
  }
  // renormalize per lhs
  std::map<int, double> sums;
  for (const auto& r : g.rules)
    if (lhs_total.count(r.lhs)) sums[r.lhs] += r.prob;
  for (auto& r : g.rules)
    if (lhs_total.count(r.lhs)) r.prob /= sums[r.lhs];
  refresh_binarized(g);
}

// --- tree to format ------------------------------------------------------

class TreeConvertError : public std::runtime_error {
 public:
  explicit TreeConvertError(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

inline void emit_format(const ParseTree& t, const Grammar& g,
                        const LocaleSpec& loc, std::vector<FormatToken>& out) {
  if (t.leaf()) {
    // a bare separator or wrapper-produced token
    out.push_back(FormatToken::lit(t.text));
    return;
  }
  const std::string& name = g.nts[t.symbol];
  auto width = [&]() -> int {
    const ParseTree* n = &t;
    while (!n->leaf()) n = &n->children.front();
    return static_cast<int>(n->text.size());
  };
  auto leaf_text = [&]() -> const std::string& {
    const ParseTree* n = &t;
    while (!n->leaf()) n = &n->children.front();
    return n->text;
  };
  auto leaf_value = [&]() -> long {
    const ParseTree* n = &t;
    while (!n->leaf()) n = &n->children.front();
    return n->value;
  };
  if (name == nt::kTwoYear) {
    out.push_back(FormatToken::field(Field::Year, 2));
  } else if (name == nt::kFourYear) {
    out.push_back(FormatToken::field(Field::Year, 4));
  } else if (name == nt::kMonthNumber) {
    out.push_back(FormatToken::field(Field::Month, width()));
  } else if (name == nt::kMonthWord) {
    bool full = is_full_month_form(leaf_text(), static_cast<int>(leaf_value()), loc);
    out.push_back(FormatToken::field(Field::Month, full ? 4 : 3));
  } else if (name == nt::kDay) {
    out.push_back(FormatToken::field(Field::Day, width()));
  } else if (name == nt::kDayOfWeek) {
    bool full = is_full_weekday_form(leaf_text(), static_cast<int>(leaf_value()), loc);
    out.push_back(FormatToken::field(Field::Weekday, full ? 4 : 3));
  } else if (name == nt::kTwelveHour) {
    out.push_back(FormatToken::field(Field::Hour12, width()));
  } else if (name == nt::kTwentyFourHour) {
    out.push_back(FormatToken::field(Field::Hour24, width()));
  } else if (name == nt::kMinute) {
    out.push_back(FormatToken::field(Field::Minute, 2));
  } else if (name == nt::kSecond) {
    out.push_back(FormatToken::field(Field::Second, 2));
  } else if (name == nt::kSubSecond) {
    out.push_back(FormatToken::field(Field::Subsecond, width()));
  } else if (name == nt::kAmPm) {
    out.push_back(FormatToken::field(Field::Meridian, 1));
  } else if (name == nt::kQuarter) {
    out.push_back(FormatToken::field(Field::Quarter, 3));
  } else if (name == nt::kTimeZone) {
    // named zone, RFC 822 offset, or ISO offset
    if (t.children.size() == 1 && t.children[0].leaf()) {
      out.push_back(FormatToken::field(Field::ZoneName, 3));
    } else if (t.children.size() == 2) {
      out.push_back(FormatToken::field(Field::ZoneOffset, 1));
    } else {
      out.push_back(FormatToken::field(Field::ZoneOffset, 5));
    }
  } else {
    for (const auto& c : t.children) emit_format(c, g, loc, out);
  }
}

}  // namespace detail

// Maps a complete parse tree onto the format language: digit widths carry
// through, word forms pick the abbreviated or full code, separators become
// literals.
inline FormatString tree_to_format(const ParseTree& t, const Grammar& g,
                                   const LocaleSpec& loc) {
  std::vector<FormatToken> toks;
  detail::emit_format(t, g, loc, toks);
  return FormatString(std::move(toks));
}

// --- detection ------------------------------------------------------------

// Pass 1 aggregates per-value parse trees into a distribution over formats;
// pass 2 validates each candidate against the whole column and ranks by
// (error rate, aggregated mass).
inline DetectionResult dominant_pattern(const ColumnSample& sample,
                                        const Grammar& grammar,
                                        const LocaleSpec& loc,
                                        const DetectOptions& opts = {}) {
  DetectionResult res;
  res.engine = "nlp";
  res.column = sample.column_name;
  auto t0 = std::chrono::steady_clock::now();

  // Formats accepting the same value language (width variants of one
  // pattern) pool their mass; the representative is the smallest rendered
  // variant seen, so results do not depend on value order.
  struct Agg {
    double mass = 0.0;
    std::string rep_text;
    FormatString rep;
  };
  std::map<std::string, Agg> masses;  // keyed by normalized language
  for (const auto& value : sample.sample) {
    std::vector<LexedToken> toks = lex(value);
    if (toks.empty()) continue;
    std::vector<ParseTree> trees =
        cyk_parse(toks, grammar, opts.max_trees, loc);
    if (trees.empty()) continue;
    double total = 0.0;
    for (const auto& t : trees) total += t.prob;
    if (total <= 0) continue;
    for (const auto& t : trees) {
      FormatString fs;
      try {
        fs = tree_to_format(t, grammar, loc);
      } catch (const TreeConvertError&) {
        continue;
      }
      std::string text = render_format(fs);
      Agg& agg = masses[normalized_format_key(fs)];
      if (agg.rep_text.empty() || text < agg.rep_text) {
        agg.rep_text = text;
        agg.rep = fs;
      }
      agg.mass += t.prob / total;
    }
  }
  auto t1 = std::chrono::steady_clock::now();

  struct Validated {
    double err;
    double mass;
    std::string text;
    const FormatString* fs;
  };
  std::vector<Validated> vals;
  for (const auto& [key, agg] : masses) {
    double err = column_error_rate(sample.non_null_values, agg.rep, loc);
    if (err <= opts.max_error_rate)
      vals.push_back({err, agg.mass, agg.rep_text, &agg.rep});
  }
  std::sort(vals.begin(), vals.end(), [](const Validated& a, const Validated& b) {
    if (a.err != b.err) return a.err < b.err;
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.text < b.text;
  });
  auto t2 = std::chrono::steady_clock::now();

  for (const auto& v : vals) {
    FormatCandidate c;
    c.format = *v.fs;
    c.locale_id = loc.id();
    c.error_rate = v.err;
    c.score = v.mass;
    res.candidates.push_back(std::move(c));
  }
  res.analysis_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
  res.validation_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t2 - t1).count();
  return res;
}

// End-to-end NLP detection: build the grammar for the locale, binarize,
// apply default weights, resolve the dominant pattern.
inline DetectionResult detect_nlp(const ColumnSample& sample,
                                  const LocaleSpec& loc,
                                  const DetectOptions& opts = {}) {
  Grammar g = build_datetime_grammar(loc);
  Grammar b = binarize(g);
  refresh_binarized(b);
  return dominant_pattern(sample, b, loc, opts);
}

inline DetectionResult detect_nlp(const ColumnSample& sample,
                                  const LocaleSpec& loc, const Grammar& binarized,
                                  const DetectOptions& opts = {}) {
  return dominant_pattern(sample, binarized, loc, opts);
}

}  // namespace datefmt
