#include "typika/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "typika/errors.hpp"
#include "typika/parser.hpp"
#include "typika/verdict.hpp"

namespace typika::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

unsigned resolve_bound(const std::optional<unsigned>& flag, const KnowledgeBase& kb) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TYPIKA_RANK_BOUND"); env && *env) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end) throw Error(std::string("invalid TYPIKA_RANK_BOUND: ") + env);
    return v;
  }
  return default_rank_bound(kb);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string element_id(std::size_t i) { return "t" + std::to_string(i); }

// Members that fix an element's type: literals and quantified concepts.
std::vector<std::string> type_summary(const ConceptSet& type) {
  std::vector<std::string> out;
  for (const auto& c : type) {
    if (c.is_literal() || c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) out.push_back(to_string(c));
  }
  return out;
}

json model_json(const EnrichedModel& m) {
  const Domain& d = *m.domain;
  json j;
  j["domain"] = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) j["domain"].push_back({{"id", element_id(i)}, {"concepts", type_summary(d.types[i])}});
  j["roleEdges"] = json::object();
  for (const auto& [role, edges] : d.role_edges) {
    json list = json::array();
    for (const auto& [x, y] : edges) list.push_back({element_id(x), element_id(y)});
    j["roleEdges"][role] = std::move(list);
  }
  j["aspectRanks"] = json::object();
  for (std::size_t a = 0; a < m.ranks.per_aspect.size(); ++a) {
    json ranks = json::object();
    for (std::size_t i = 0; i < d.size(); ++i) ranks[element_id(i)] = m.ranks.per_aspect[a][i];
    j["aspectRanks"][to_string(m.aspects.aspects()[a])] = std::move(ranks);
  }
  j["globalRanks"] = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) j["globalRanks"][element_id(i)] = m.ranks.global[i];
  return j;
}

void print_model(std::ostream& out, const EnrichedModel& m) {
  const Domain& d = *m.domain;
  out << "model:\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << "  " << std::left << std::setw(4) << element_id(i) << " global " << m.ranks.global[i];
    if (!m.ranks.per_aspect.empty()) {
      out << "  aspects";
      for (std::size_t a = 0; a < m.ranks.per_aspect.size(); ++a)
        out << ' ' << to_string(m.aspects.aspects()[a]) << ':' << m.ranks.per_aspect[a][i];
    }
    out << "  {";
    const auto summary = type_summary(d.types[i]);
    for (std::size_t k = 0; k < summary.size(); ++k) out << (k ? ", " : "") << summary[k];
    out << "}\n";
  }
  for (const auto& [role, edges] : d.role_edges) {
    out << "  " << role << ":";
    for (const auto& [x, y] : edges) out << " (" << element_id(x) << "," << element_id(y) << ")";
    out << '\n';
  }
}

json rank_value(const Rank& r) { return r.is_finite() ? json(r.value()) : json("inf"); }

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

struct Options {
  std::string kb_path;
  std::string query;
  std::string queries_path;
  std::string semantics = "enriched";
  std::optional<unsigned> rank_bound;
  bool emit_model = false;
  bool json = false;
  bool timing = false;
};

int cmd_check(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  bool consistent = true;
  std::string reason;
  try {
    Reasoner reasoner(kb, default_rank_bound(kb));
    if (!kb.abox().empty()) build_canonical_domain(reasoner.rational_closure(), {});
  } catch (const InconsistentKb& e) {
    consistent = false;
    reason = e.what();
  }
  if (o.json) {
    json j{{"command", "check"}, {"kb", o.kb_path}, {"consistent", consistent}};
    if (o.timing) j["timingMs"] = elapsed_ms(start);
    write_json(out, j);
  } else {
    out << (consistent ? "consistent" : "inconsistent: " + reason) << '\n';
  }
  return consistent ? 0 : 1;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const RationalClosure rc(kb);
  const RankedTBox& ranked = rc.ranked();

  std::vector<Axiom> axioms = kb.strict();
  axioms.insert(axioms.end(), kb.defeasible().begin(), kb.defeasible().end());
  std::vector<ConceptExpr> lhs;
  for (const auto& a : axioms) {
    if (std::find(lhs.begin(), lhs.end(), a.lhs) == lhs.end()) lhs.push_back(a.lhs);
  }

  if (o.json) {
    json levels = json::array();
    for (std::size_t i = 0; i < ranked.level_count(); ++i) {
      json level = json::array();
      for (const auto& a : axioms) {
        if (ranked.level_contains(i, a)) level.push_back(to_string(a));
      }
      levels.push_back(std::move(level));
    }
    json ranks = json::array();
    for (const auto& c : lhs) ranks.push_back({{"concept", to_string(c)}, {"rank", rank_value(rc.rank(c))}});
    json j{{"command", "rank"}, {"kb", o.kb_path}, {"levels", std::move(levels)}, {"ranks", std::move(ranks)}};
    if (o.timing) j["timingMs"] = elapsed_ms(start);
    write_json(out, j);
    return 0;
  }

  std::size_t width = 5;
  for (const auto& a : axioms) width = std::max(width, to_string(a).size());
  out << pad("axiom", width);
  for (std::size_t i = 0; i < ranked.level_count(); ++i) out << "  E" << i;
  out << '\n';
  for (const auto& a : axioms) {
    std::string line = pad(to_string(a), width);
    for (std::size_t i = 0; i < ranked.level_count(); ++i) {
      const std::string label = "E" + std::to_string(i);
      line += "  " + pad(ranked.level_contains(i, a) ? "x" : "-", label.size());
    }
    out << line.substr(0, line.find_last_not_of(' ') + 1) << '\n';
  }
  std::size_t cwidth = 7;
  for (const auto& c : lhs) cwidth = std::max(cwidth, to_string(c).size());
  out << '\n' << pad("concept", cwidth) << "  rank\n";
  for (const auto& c : lhs) out << pad(to_string(c), cwidth) << "  " << rc.rank(c).to_string() << '\n';
  return 0;
}

int cmd_query(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const auto semantics = parse_semantics(o.semantics);
  if (!semantics) throw Error("unknown semantics " + o.semantics);
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  Axiom query;
  try {
    query = parse_axiom(o.query);
  } catch (const ParseError& e) {
    throw Error(std::string("query: ") + e.what());
  }
  const Reasoner reasoner(kb, resolve_bound(o.rank_bound, kb));
  Verdict v = reasoner.query(query, *semantics, o.emit_model);
  if (o.timing) v.timing_ms = elapsed_ms(start);

  if (o.json) {
    json j{{"command", "query"},
           {"kb", o.kb_path},
           {"query", to_string(query)},
           {"semantics", std::string(to_string(v.semantics))},
           {"entailed", v.entailed}};
    if (o.emit_model && v.witness) j["witness"] = model_json(*v.witness);
    if (v.timing_ms) j["timingMs"] = *v.timing_ms;
    write_json(out, j);
  } else {
    out << to_string(v.semantics) << ": " << (v.entailed ? "entailed" : "not entailed") << '\n';
    if (o.emit_model && v.witness) print_model(out, *v.witness);
    if (v.timing_ms) out << "time: " << std::fixed << std::setprecision(3) << *v.timing_ms << " ms\n";
  }
  return v.entailed ? 0 : 1;
}

struct Row {
  std::string query;
  std::optional<std::string> error;
  bool rc = false;
  bool single_pref = false;
  bool enriched = false;

  bool violation() const { return !error && rc && !enriched; }
  bool oracle_mismatch() const { return !error && rc != single_pref; }
  bool strengthened() const { return !error && enriched && !rc; }
};

std::vector<std::string> read_queries(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const auto lines = read_queries(o.queries_path);
  const Reasoner reasoner(kb, resolve_bound(o.rank_bound, kb));

  std::vector<Row> rows;
  for (const auto& line : lines) {
    Row row;
    row.query = line;
    try {
      const Axiom q = parse_axiom(line);
      row.query = to_string(q);
      row.rc = reasoner.query(q, Semantics::RationalClosure).entailed;
      row.single_pref = reasoner.query(q, Semantics::SinglePref).entailed;
      row.enriched = reasoner.query(q, Semantics::Enriched).entailed;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  std::size_t n_rc = 0, n_sp = 0, n_en = 0, n_str = 0, n_viol = 0, n_mis = 0, n_err = 0;
  for (const auto& r : rows) {
    if (r.error) {
      ++n_err;
      continue;
    }
    n_rc += r.rc;
    n_sp += r.single_pref;
    n_en += r.enriched;
    n_str += r.strengthened();
    n_viol += r.violation();
    n_mis += r.oracle_mismatch();
  }

  if (o.json) {
    json jrows = json::array();
    for (const auto& r : rows) {
      json jr{{"query", r.query}};
      if (r.error) {
        jr["error"] = *r.error;
      } else {
        jr["rc"] = r.rc;
        jr["singlePref"] = r.single_pref;
        jr["enriched"] = r.enriched;
        jr["strengthened"] = r.strengthened();
        jr["violation"] = r.violation();
        jr["oracleMismatch"] = r.oracle_mismatch();
      }
      jrows.push_back(std::move(jr));
    }
    json j{{"command", "compare"},
           {"kb", o.kb_path},
           {"queries", o.queries_path},
           {"rows", std::move(jrows)},
           {"summary",
            {{"queries", rows.size()},
             {"rc", n_rc},
             {"singlePref", n_sp},
             {"enriched", n_en},
             {"strengthened", n_str},
             {"violations", n_viol},
             {"oracleMismatches", n_mis},
             {"errors", n_err}}}};
    if (o.timing) j["timingMs"] = elapsed_ms(start);
    write_json(out, j);
  } else {
    std::size_t width = 5;
    for (const auto& r : rows) width = std::max(width, r.query.size());
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    out << pad("query", width) << "  rc   single-pref  enriched  flags\n";
    for (const auto& r : rows) {
      out << pad(r.query, width) << "  ";
      if (r.error) {
        out << "error: " << *r.error << '\n';
        continue;
      }
      std::string flags;
      if (r.violation()) flags += "VIOLATION ";
      if (r.oracle_mismatch()) flags += "ORACLE-MISMATCH ";
      if (r.strengthened()) flags += "strengthened ";
      if (!flags.empty()) flags.pop_back();
      std::string line = pad(yes(r.rc), 5) + pad(yes(r.single_pref), 13) + pad(yes(r.enriched), 10) + flags;
      out << line.substr(0, line.find_last_not_of(' ') + 1) << '\n';
    }
    out << "summary: " << rows.size() << " queries, rc " << n_rc << ", single-pref " << n_sp << ", enriched " << n_en
        << ", strengthened " << n_str << ", violations " << n_viol << ", oracle mismatches " << n_mis << ", errors "
        << n_err << '\n';
    if (o.timing) out << "time: " << std::fixed << std::setprecision(3) << elapsed_ms(start) << " ms\n";
  }
  return n_viol + n_mis > 0 ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defeasible reasoning in ALC with typicality", "typika"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check that a knowledge base is consistent");
  check->add_option("kb", o.kb_path, "Knowledge base file")->required();
  check->add_flag("--json", o.json, "Print a JSON document");
  check->add_flag("--timing", o.timing, "Report elapsed time");

  auto* rank = app.add_subcommand("rank", "Print the exceptionality ranking");
  rank->add_option("kb", o.kb_path, "Knowledge base file")->required();
  rank->add_flag("--json", o.json, "Print a JSON document");
  rank->add_flag("--timing", o.timing, "Report elapsed time");

  auto* query = app.add_subcommand("query", "Answer one query");
  query->add_option("--semantics", o.semantics, "rc, single-pref or enriched")
      ->check(CLI::IsMember({"rc", "single-pref", "enriched"}));
  query->add_option("--rank-bound", o.rank_bound, "Largest rank considered");
  query->add_flag("--emit-model", o.emit_model, "Print a witness model");
  query->add_flag("--json", o.json, "Print a JSON document");
  query->add_flag("--timing", o.timing, "Report elapsed time");
  query->add_option("kb", o.kb_path, "Knowledge base file")->required();
  query->add_option("query", o.query, "Query, e.g. \"T(Penguin) => HasNiceFeather\"")->required();

  auto* compare = app.add_subcommand("compare", "Answer a file of queries under every semantics");
  compare->add_option("--rank-bound", o.rank_bound, "Largest rank considered");
  compare->add_flag("--json", o.json, "Print a JSON document");
  compare->add_flag("--timing", o.timing, "Report elapsed time");
  compare->add_option("kb", o.kb_path, "Knowledge base file")->required();
  compare->add_option("queries", o.queries_path, "File with one query per line")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*rank) return cmd_rank(o, out);
    if (*query) return cmd_query(o, out);
    return cmd_compare(o, out);
  } catch (const ParseError& e) {
    err << "error: " << o.kb_path << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace typika::cli
