// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dataworth/json_io.hpp"

namespace dataworth {

namespace {

std::string machine(const Json& j) { return j.dump(2) + "\n"; }

/// Column-aligned text or a pipe table.
class Table {
 public:
  Table(std::vector<std::string> header, std::vector<bool> right) : header_(std::move(header)), right_(std::move(right)) {}

  void row(std::vector<std::string> cells) { rows_.push_back({std::move(cells), false}); }
  /// Separator before a summary row.
  void rule() { rows_.push_back({{}, true}); }

  [[nodiscard]] std::string render(RenderFormat format) const {
    return format == RenderFormat::markdown ? markdown() : text();
  }

 private:
  struct Row {
    std::vector<std::string> cells;
    bool rule;
  };

  [[nodiscard]] std::string text() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.cells.size(); ++c) width[c] = std::max(width[c], r.cells[c].size());
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t c = 0; c < header_.size(); ++c) {
        const std::string cell = c < cells.size() ? cells[c] : "";
        if (c) s += "  ";
        const std::string pad(width[c] - cell.size(), ' ');
        s += right_[c] ? pad + cell : cell + pad;
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << "\n";
    };
    auto dashes = [&] {
      std::vector<std::string> d;
      for (auto w : width) d.emplace_back(w, '-');
      line(d);
    };
    line(header_);
    dashes();
    for (const auto& r : rows_) {
      if (r.rule) {
        dashes();
      } else {
        line(r.cells);
      }
    }
    return out.str();
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '|') out += "\\|";
      else if (ch == '\n') out += ' ';
      else out += ch;
    }
    return out;
  }

  [[nodiscard]] std::string markdown() const {
    std::ostringstream out;
    out << "|";
    for (const auto& h : header_) out << " " << escape(h) << " |";
    out << "\n|";
    for (std::size_t c = 0; c < header_.size(); ++c) out << (right_[c] ? "---:|" : "---|");
    out << "\n";
    for (const auto& r : rows_) {
      if (r.rule) continue;
      out << "|";
      for (std::size_t c = 0; c < header_.size(); ++c) {
        const std::string cell = c < r.cells.size() ? escape(r.cells[c]) : "";
        out << (cell.empty() ? " |" : " " + cell + " |");
      }
      out << "\n";
    }
    return out.str();
  }

  std::vector<std::string> header_;
  std::vector<bool> right_;
  std::vector<Row> rows_;
};

std::string bold(RenderFormat f, const std::string& s) { return f == RenderFormat::markdown ? "**" + s + "**" : s; }

std::string heading(RenderFormat f, const std::string& title) {
  return f == RenderFormat::markdown ? "## " + title + "\n\n" : title + "\n";
}

std::string code(RenderFormat f, const std::string& s) { return f == RenderFormat::markdown ? "`" + s + "`" : s; }

std::map<std::string, std::string> facet_titles(const std::vector<FacetSubtotal>& facets) {
  std::map<std::string, std::string> out;
  for (const auto& f : facets) out[f.facet_id] = f.title;
  return out;
}

std::string title_of(const std::map<std::string, std::string>& titles, const std::string& facet_id) {
  auto it = titles.find(facet_id);
  return it == titles.end() || it->second.empty() ? facet_id : it->second;
}

std::string yes_no(const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "unknown"; }

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

}  // namespace

const char* to_string(RenderFormat f) {
  switch (f) {
    case RenderFormat::machine: return "machine";
    case RenderFormat::human_table: return "human_table";
    case RenderFormat::markdown: return "markdown";
  }
  return "human_table";
}

std::optional<RenderFormat> parse_render_format(std::string_view text) {
  if (text == "machine" || text == "json") return RenderFormat::machine;
  if (text == "human" || text == "table" || text == "human_table") return RenderFormat::human_table;
  if (text == "markdown" || text == "md") return RenderFormat::markdown;
  return std::nullopt;
}

std::string format_score(const Rational& r) {
  if (r.is_terminating_decimal()) {
    const std::string exact = r.to_string();
    const auto dot = exact.find('.');
    if (dot == std::string::npos || exact.size() - dot - 1 <= 6) return exact;
  }
  return r.to_decimal(6);
}

std::string render_value(const ValueReport& r, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(r));
  const RenderFormat f = spec.format;
  const bool weighted = spec.verbosity >= 1 || std::any_of(r.questions.begin(), r.questions.end(), [](const auto& q) {
                          return q.weight != Rational(1);
                        });

  std::vector<std::string> header = {"Facet", "Sub-facet", "Response"};
  std::vector<bool> right = {false, false, false};
  if (spec.include_provenance) {
    header.push_back("Source");
    right.push_back(false);
  }
  header.push_back("Score");
  right.push_back(true);
  if (weighted) {
    header.insert(header.end(), {"Weight", "Contribution"});
    right.insert(right.end(), {true, true});
  }
  const std::size_t score_col = spec.include_provenance ? 4 : 3;
  Table table(header, right);

  const auto titles = facet_titles(r.facets);
  std::map<std::string, const FacetSubtotal*> subtotals;
  for (const auto& fs : r.facets) subtotals[fs.facet_id] = &fs;
  std::string current;
  for (std::size_t i = 0; i < r.questions.size(); ++i) {
    const auto& q = r.questions[i];
    std::vector<std::string> cells = {q.facet_id == current ? "" : title_of(titles, q.facet_id), q.prompt,
                                      q.response.to_string()};
    current = q.facet_id;
    if (spec.include_provenance) cells.emplace_back(to_string(q.provenance));
    cells.push_back(format_score(q.value));
    if (weighted) cells.insert(cells.end(), {format_score(q.weight), format_score(q.contribution)});
    table.row(cells);
    const bool last_of_facet = i + 1 == r.questions.size() || r.questions[i + 1].facet_id != q.facet_id;
    if (spec.verbosity >= 1 && last_of_facet && subtotals.count(q.facet_id)) {
      std::vector<std::string> sub(header.size());
      sub[1] = "subtotal";
      sub[weighted ? header.size() - 1 : score_col] = format_score(subtotals[q.facet_id]->subtotal);
      table.row(sub);
    }
  }
  table.rule();
  std::vector<std::string> total(header.size());
  total[0] = bold(f, "Data Value");
  total[weighted ? header.size() - 1 : score_col] = bold(f, format_score(r.total));
  table.row(total);

  std::ostringstream out;
  out << heading(f, "Data value: " + (r.dataset_id.empty() ? std::string("(unnamed)") : r.dataset_id));
  out << "catalog " << code(f, r.catalog_version) << ", mode " << to_string(r.mode)
      << (r.profile_fingerprint.empty() ? "" : ", weights " + code(f, r.profile_fingerprint)) << "\n";
  out << "answered " << r.answered << ", omitted " << r.omitted << ", dont_know " << r.dont_know
      << ", not_applicable " << r.not_applicable << "\n\n";
  out << table.render(f);
  return out.str();
}

std::string render_comparison(const ComparisonReport& c, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(c));
  const RenderFormat f = spec.format;

  struct Key {
    std::size_t order;
    std::string id;
    bool operator<(const Key& o) const { return order != o.order ? order < o.order : id < o.id; }
  };
  std::map<Key, std::pair<std::string, std::string>> rows;  // -> (facet, prompt)
  std::map<std::string, std::string> titles;
  std::vector<std::map<std::string, const QuestionScore*>> by_id(c.reports.size());
  for (std::size_t k = 0; k < c.reports.size(); ++k) {
    for (const auto& fs : c.reports[k].facets) titles.emplace(fs.facet_id, fs.title);
    for (const auto& q : c.reports[k].questions) {
      rows.emplace(Key{q.order, q.question_id}, std::make_pair(q.facet_id, q.prompt));
      by_id[k][q.question_id] = &q;
    }
  }
  std::set<std::string> differing;
  for (const auto& d : c.differences) differing.insert(d.question_id);

  std::vector<std::string> header = {"", "Facet", "Sub-facet"};
  std::vector<bool> right = {false, false, false};
  for (const auto& r : c.reports) {
    header.insert(header.end(), {r.dataset_id, "Score"});
    right.insert(right.end(), {false, true});
  }
  Table table(header, right);
  std::string current;
  for (const auto& [key, info] : rows) {
    std::vector<std::string> cells = {differing.count(key.id) ? "*" : "",
                                      info.first == current ? "" : title_of(titles, info.first), info.second};
    current = info.first;
    for (std::size_t k = 0; k < c.reports.size(); ++k) {
      auto it = by_id[k].find(key.id);
      if (it == by_id[k].end()) {
        cells.insert(cells.end(), {"-", "-"});
      } else {
        cells.insert(cells.end(), {it->second->response.to_string(), format_score(it->second->value)});
      }
    }
    table.row(cells);
  }
  table.rule();
  std::vector<std::string> total = {"", bold(f, "Data Value"), ""};
  for (const auto& r : c.reports) total.insert(total.end(), {"", bold(f, format_score(r.total))});
  table.row(total);

  std::ostringstream out;
  std::vector<std::string> names;
  for (const auto& r : c.reports) names.push_back(r.dataset_id);
  out << heading(f, "Comparison: " + join(names, " vs "));
  out << "catalog " << code(f, c.catalog_version) << "\n";
  out << "winner " << bold(f, c.winner) << "; ranking";
  for (std::size_t i = 0; i < c.ranking.size(); ++i) {
    out << (i ? ", " : " ") << (i + 1) << ". " << c.ranking[i].first << " " << format_score(c.ranking[i].second);
  }
  out << "\n" << differing.size() << " differing question" << (differing.size() == 1 ? "" : "s")
      << " marked *\n\n";
  out << table.render(f);
  return out.str();
}

std::string render_delta(const DeltaReport& d, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(d));
  const RenderFormat f = spec.format;
  Table table({"Question", "Before", "After", "Delta", "Total"}, {false, false, false, true, true});
  for (const auto& c : d.changes) {
    const std::string sign = c.delta.is_negative() || c.delta.is_zero() ? "" : "+";
    table.row({c.question_id, c.before ? c.before->to_string() : "(unanswered)", c.after.to_string(),
               sign + format_score(c.delta), format_score(c.total_after)});
  }
  std::ostringstream out;
  out << heading(f, "What-if: " + d.dataset_id);
  const Rational delta = d.new_total - d.base_total;
  out << "total " << format_score(d.base_total) << " -> " << bold(f, format_score(d.new_total)) << " ("
      << (delta.is_negative() || delta.is_zero() ? "" : "+") << format_score(delta) << ")\n\n";
  out << table.render(f);
  return out.str();
}

std::string render_replay(const ReplayVerdict& v, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(v));
  const RenderFormat f = spec.format;
  std::ostringstream out;
  out << heading(f, "Replay: " + v.dataset_id);
  out << "rows " << v.rows << "\n";
  out << "engine sum " << bold(f, format_score(v.engine_sum)) << "\n";
  out << "printed total " << (v.has_printed_total ? format_score(v.printed_total) : std::string("(none)"))
      << (v.matches_printed ? " (match)" : " (MISMATCH)") << "\n";
  out << "catalog-rule total " << format_score(v.catalog_total) << "\n";
  out << "discrepancies " << v.discrepancies.size() << "\n";
  if (!v.discrepancies.empty()) {
    Table table({"Line", "Question", "Response", "Printed", "Catalog"}, {true, false, false, true, true});
    for (const auto& d : v.discrepancies) {
      table.row({std::to_string(d.line), d.question_id, d.response, format_score(d.printed),
                 format_score(d.catalog_score)});
    }
    out << "\n" << table.render(f);
  }
  if (spec.verbosity >= 1) out << "\n" << render_value(v.report, spec);
  return out.str();
}

std::string render_profile(const DatasetProfile& p, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(p));
  const RenderFormat f = spec.format;
  Table facts({"Property", "Value"}, {false, false});
  facts.row({"format", p.format ? to_string(*p.format) : "unknown"});
  facts.row({"structure", p.structure ? to_string(*p.structure) : "unknown"});
  facts.row({"bytes", p.byte_size ? std::to_string(*p.byte_size) : "unknown"});
  facts.row({"size bucket", p.size_bucket_label().value_or("unknown")});
  facts.row({"schema", yes_no(p.has_schema)});
  facts.row({"rows", p.row_count ? std::to_string(*p.row_count) : "unknown"});
  facts.row({"error rows", std::to_string(p.error_rows)});
  facts.row({"duplicate rows", p.duplicate_row_fraction ? format_score(*p.duplicate_row_fraction) : "unknown"});
  facts.row({"granularity", to_string(p.granularity)});
  facts.row({"time series", yes_no(p.time_series)});
  facts.row({"primary types only", yes_no(p.primary_types_only)});
  facts.row({"instances similar", yes_no(p.instances_similar)});
  if (p.sampled) facts.row({"sampled", "yes"});
  if (p.sensitivity) {
    const auto& s = *p.sensitivity;
    auto cols = [](const std::vector<std::string>& v) { return v.empty() ? std::string("none") : join(v); };
    facts.row({"pii columns", cols(s.pii_columns)});
    facts.row({"protected columns", cols(s.protected_columns)});
    facts.row({"financial columns", cols(s.financial_columns)});
    facts.row({"health columns", cols(s.health_columns)});
    facts.row({"confidential columns", cols(s.confidential_columns)});
  }
  std::ostringstream out;
  out << heading(f, "Profile: " + p.path);
  out << facts.render(f);
  if (!p.fields.empty()) {
    Table fields({"Field", "Type", "Missing", "Complete"}, {false, false, true, true});
    for (const auto& fi : p.fields) {
      fields.row({fi.name, to_string(fi.type), std::to_string(fi.missing), format_score(fi.completeness)});
    }
    out << "\n" << fields.render(f);
  }
  for (const auto& w : p.warnings) out << "\nwarning: " << w;
  if (!p.warnings.empty()) out << "\n";
  return out.str();
}

std::string render_distribution(const DistributionTable& t, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(t));
  const RenderFormat f = spec.format;
  Table table({"Dimension", "Value", "Count"}, {false, false, true});
  for (const auto& r : t.rows) {
    bool first = true;
    for (const auto& [v, n] : r.counts) {
      table.row({first ? r.dimension : "", v, std::to_string(n)});
      first = false;
    }
    if (r.missing > 0) table.row({"", "(missing)", std::to_string(r.missing)});
  }
  std::ostringstream out;
  out << heading(f, "Distribution over " + std::to_string(t.total) + " descriptors");
  out << table.render(f);
  return out.str();
}

std::string render_rank_prior(const RankPrior& prior, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(prior));
  const RenderFormat f = spec.format;
  Table table({"Dimension", "Ranking", "Scores", "Provenance"}, {false, false, false, false});
  for (const auto& d : prior.dimensions) {
    std::vector<std::string> scores;
    for (const auto& [label, s] : prior_to_scores(d).map) scores.push_back(label + "=" + format_score(s));
    table.row({d.dimension, join(d.order), join(scores), to_string(d.provenance)});
  }
  std::ostringstream out;
  out << heading(f, "Rank priors");
  out << table.render(f);
  return out.str();
}

std::string render_validation(const ValidationReport& r, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return machine(to_json(r));
  const RenderFormat f = spec.format;
  std::ostringstream out;
  out << heading(f, r.valid() ? "Responses valid" : "Responses invalid");
  if (!r.violations.empty()) {
    Table table({"Code", "Question", "Message"}, {false, false, false});
    for (const auto& v : r.violations) table.row({to_string(v.code), v.question_id, v.message});
    out << table.render(f);
  }
  if (!r.unanswered.empty()) out << r.unanswered.size() << " canonical questions unanswered\n";
  return out.str();
}

std::string distribution_tsv(const DistributionTable& t) {
  std::ostringstream out;
  out << "dimension\tvalue\tcount\n";
  for (const auto& r : t.rows) {
    for (const auto& [v, n] : r.counts) out << r.dimension << "\t" << v << "\t" << n << "\n";
    if (r.missing > 0) out << r.dimension << "\t(missing)\t" << r.missing << "\n";
  }
  return out.str();
}

}  // namespace dataworth
