// Command-line front end. Every subcommand builds a JSON document; text
// output is rendered from that document.

#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsymtree/classc.hpp"
#include "qsymtree/invariants.hpp"
#include "qsymtree/io.hpp"
#include "qsymtree/verify.hpp"

using namespace qsymtree;
using nlohmann::json;

namespace {

/// Bad flag values found after CLI11 parsing; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::vector<std::string> files, posets, digraphs;

  std::vector<Object> load() const {
    std::vector<Object> out;
    for (const auto& f : files)
      for (auto& o : read_objects(f)) out.push_back(std::move(o));
    for (const auto& s : posets) out.emplace_back(parse_poset_literal(s));
    for (const auto& s : digraphs) out.emplace_back(parse_digraph_literal(s));
    if (out.empty()) throw UsageError("no input objects (use --file, --poset or --digraph)");
    return out;
  }
};

json object_json(const Object& o) {
  return std::visit([](const auto& x) { return to_json(x); }, o);
}

LabeledPoset need_poset(const Object& o, const char* cmd) {
  if (auto p = std::get_if<LabeledPoset>(&o)) return *p;
  throw UsageError(std::string(cmd) + " expects posets, got a digraph");
}

Digraph need_digraph(const Object& o, const char* cmd) {
  if (auto g = std::get_if<Digraph>(&o)) return *g;
  throw UsageError(std::string(cmd) + " expects digraphs, got a poset");
}

// --- commands ---------------------------------------------------------------

json run_kpw(const Inputs& in, const std::string& basis) {
  json results = json::array();
  for (const auto& o : in.load()) {
    QSymExpr k = enumerator_f(need_poset(o, "kpw"));
    if (basis == "M") k = f_to_m(k);
    results.push_back({{"object", object_json(o)}, {"K", k.to_json()}});
  }
  return {{"command", "kpw"}, {"basis", basis}, {"results", results}};
}

json run_xgt(const Inputs& in, std::optional<int> k, bool top) {
  json results = json::array();
  for (const auto& o : in.load()) {
    Digraph g = need_digraph(o, "xgt");
    json r{{"object", object_json(o)}, {"X", chromatic_qsym_t(g).to_json()}};
    if (k) r["chromatic_poly"] = {{"k", *k}, {"value", chromatic_poly(g, *k).get_str()}};
    if (top) r["top_t_coefficient"] = top_t_coefficient(g).to_json();
    results.push_back(r);
  }
  return {{"command", "xgt"}, {"results", results}};
}

json run_spec(const Inputs& in, int k) {
  if (k < 0) throw UsageError("--k must be nonnegative");
  json results = json::array();
  for (const auto& o : in.load()) {
    QPolynomial v = principal_specialization(enumerator_f(need_poset(o, "spec")), k);
    results.push_back({{"object", object_json(o)}, {"value", v.to_json()}});
  }
  return {{"command", "spec"}, {"k", k}, {"results", results}};
}

json run_invariants(const Inputs& in) {
  json results = json::array();
  for (const auto& o : in.load()) {
    LabeledPoset p = need_poset(o, "invariants");
    json r{{"object", object_json(o)}, {"canonical_key", canonical_key(p).bytes}};
    r["is_tree"] = is_tree(p);
    r["is_forest"] = is_forest(p);
    r["jump_vector"] = jump_vector(p);
    r["up_jump_vector"] = jump_vector(dual(p));
    json pairs = json::array();
    for (const auto& [ij, c] : jump_pairs(p)) pairs.push_back({ij.first, ij.second, c});
    r["jump_pairs"] = pairs;
    json anti = json::object();
    for (const auto& [size, c] : antichain_counts(p)) anti[std::to_string(size)] = c;
    r["antichain_counts"] = anti;
    r["greene_shape"] = greene_shape(p);
    r["fair_tree"] = is_fair_tree(p);
    r["class_C"] = is_in_class_C(p);
    r["realizable"] = is_realizable(p);
    if (is_realizable(p)) {
      r["linear_extensions"] = linear_extension_count(p).get_str();
      LeadingTerm lt = leading_term_check(p);
      r["leading_term"] = {{"exponent", lt.exponent}, {"coefficient", lt.coefficient.get_str()}, {"jump", lt.jump}, {"matches", lt.matches}};
    }
    results.push_back(r);
  }
  return {{"command", "invariants"}, {"results", results}};
}

json run_enumerate(const std::string& family, int n, bool count_only, const std::string& range, std::optional<std::size_t> sample,
                   std::uint64_t seed) {
  Family f;
  try {
    f = parse_family(family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (n < 1) throw UsageError("--n must be at least 1");
  IndexRange r;
  if (!range.empty()) {
    try {
      r = parse_range(range);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  auto all = slice(generate({f, n}), r);
  if (sample && *sample < all.size()) {
    std::mt19937_64 rng(seed);
    std::vector<FamilyMember> picked;
    std::sample(all.begin(), all.end(), std::back_inserter(picked), *sample, rng);
    all = std::move(picked);
  }
  json out{{"command", "enumerate"}, {"family", family}, {"n", n}, {"count", all.size()}};
  if (!count_only) {
    json objs = json::array();
    for (const auto& o : all) objs.push_back(object_json(o));
    out["objects"] = objs;
  }
  return out;
}

json run_verify(const std::string& conjecture, int n, std::optional<int> k, const ScanOptions& opt) {
  if (conjecture == "c2") return conjecture2_scan(n, opt).to_json();
  if (conjecture == "c3") return conjecture3_scan(n, opt).to_json();
  if (conjecture == "fair") return fair_tree_scan(n, opt).to_json();
  if (conjecture == "xgt") return xgt_scan(n, opt).to_json();
  if (conjecture == "multiset") return multiset_question_scan(n, opt).to_json();
  // spec: both strict and weak enumerators, at --k or at k = n-1 and n.
  std::vector<int> ks = k ? std::vector<int>{*k} : std::vector<int>{n - 1, n};
  json reports = json::array();
  for (int kk : ks) {
    if (kk < 0) continue;
    for (bool weak : {false, true}) {
      ScanOptions o = opt;
      // One checkpoint file per scan.
      if (o.checkpoint) *o.checkpoint += "." + std::to_string(kk) + (weak ? ".weak" : ".strict");
      reports.push_back(spec_scan(n, kk, o, weak).to_json());
    }
  }
  return reports;
}

json run_iso(const Inputs& in) {
  auto objs = in.load();
  if (objs.size() != 2) throw UsageError("iso needs exactly two objects, got " + std::to_string(objs.size()));
  json out{{"command", "iso"}};
  if (std::holds_alternative<LabeledPoset>(objs[0]) && std::holds_alternative<LabeledPoset>(objs[1])) {
    const auto& p = std::get<LabeledPoset>(objs[0]);
    const auto& q = std::get<LabeledPoset>(objs[1]);
    out["kind"] = "poset";
    out["isomorphic"] = isomorphic(p, q);
    bool weak = p.all_covers(Strictness::Weak) && q.all_covers(Strictness::Weak);
    bool strict = p.all_covers(Strictness::Strict) && q.all_covers(Strictness::Strict);
    out["invariant"] = weak ? "K_P" : strict ? "Kbar_P" : "K_(P,w)";
    out["invariant_equal"] = enumerator_f(p) == enumerator_f(q);
  } else if (std::holds_alternative<Digraph>(objs[0]) && std::holds_alternative<Digraph>(objs[1])) {
    const auto& g = std::get<Digraph>(objs[0]);
    const auto& h = std::get<Digraph>(objs[1]);
    out["kind"] = "digraph";
    out["isomorphic"] = isomorphic(g, h);
    out["invariant"] = "X_G";
    out["invariant_equal"] = chromatic_qsym_t(g) == chromatic_qsym_t(h);
  } else {
    throw UsageError("iso compares two posets or two digraphs");
  }
  return out;
}

// --- text rendering -----------------------------------------------------------

std::string render_text(const std::string& cmd, const json& j) {
  std::ostringstream os;
  if (cmd == "kpw") {
    for (const auto& r : j.at("results")) os << QSymExpr::from_json(r.at("K")).to_string() << "\n";
  } else if (cmd == "xgt") {
    for (const auto& r : j.at("results")) {
      os << TQSymPoly::from_json(r.at("X")).to_string() << "\n";
      if (r.contains("chromatic_poly")) {
        os << "chi(" << r["chromatic_poly"]["k"].get<int>() << ") = " << r["chromatic_poly"]["value"].get<std::string>() << "\n";
      }
      if (r.contains("top_t_coefficient")) os << "top: " << QSymExpr::from_json(r["top_t_coefficient"]).to_string() << "\n";
    }
  } else if (cmd == "spec") {
    for (const auto& r : j.at("results")) os << QPolynomial::from_json(r.at("value")).to_string() << "\n";
  } else if (cmd == "invariants") {
    bool first = true;
    for (const auto& r : j.at("results")) {
      if (!first) os << "\n";
      first = false;
      for (const auto& [key, v] : r.items()) {
        if (key == "object") continue;
        os << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (cmd == "enumerate") {
    if (!j.contains("objects")) {
      os << j.at("count").get<std::size_t>() << "\n";
    } else {
      bool first = true;
      for (const auto& o : j.at("objects")) {
        if (!first) os << "\n";
        first = false;
        os << to_text(parse_objects(o.dump()).at(0));
      }
    }
  } else if (cmd == "verify") {
    if (j.is_array()) {
      for (const auto& r : j) os << CollisionReport::render_text(r);
    } else {
      os << CollisionReport::render_text(j);
    }
  } else if (cmd == "iso") {
    os << (j.at("isomorphic").get<bool>() ? "isomorphic" : "non-isomorphic") << "; " << j.at("invariant").get<std::string>()
       << (j.at("invariant_equal").get<bool>() ? " equal" : " differ") << "\n";
  }
  return os.str();
}

void add_inputs(CLI::App* sub, Inputs& in, bool posets, bool digraphs) {
  auto* file = sub->add_option("--file", in.files, "Input file (text or JSON); repeatable")->check(CLI::ExistingFile);
  if (posets) sub->add_option("--poset", in.posets, "Inline poset, e.g. \"3; 1<2 W; 1<3 S\"")->excludes(file);
  if (digraphs) sub->add_option("--digraph", in.digraphs, "Inline digraph, e.g. \"3; 1->2; 3->2\"")->excludes(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasisymmetric invariants of labeled posets and digraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "text";
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "text"}));

  Inputs in;
  std::string basis = "F";
  auto* kpw = app.add_subcommand("kpw", "(P,w)-partition enumerator of each poset");
  add_inputs(kpw, in, true, false);
  kpw->add_option("--basis", basis, "Output basis")->check(CLI::IsMember({"M", "F"}));

  std::optional<int> k;
  bool top = false;
  auto* xgt = app.add_subcommand("xgt", "chromatic quasisymmetric function X(x,t) of each digraph");
  add_inputs(xgt, in, false, true);
  xgt->add_option("--k", k, "Also count proper colourings with k colours");
  xgt->add_flag("--top", top, "Also print the top t-coefficient (acyclic input only)");

  int spec_k = 0;
  auto* spec = app.add_subcommand("spec", "principal specialization of order k of each enumerator");
  add_inputs(spec, in, true, false);
  spec->add_option("--k", spec_k, "Order of the specialization")->required();

  auto* inv = app.add_subcommand("invariants", "poset invariants");
  add_inputs(inv, in, true, false);

  std::string family, range;
  int n = 0;
  bool count_only = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 20240611;
  auto* en = app.add_subcommand("enumerate", "list a family, one object per block");
  std::vector<std::string> family_list;
  for (const auto& [f, name] : family_names()) family_list.push_back(name);
  en->add_option("--family", family, "Family")->required()->check(CLI::IsMember(family_list));
  en->add_option("--n", n, "Size")->required();
  en->add_flag("--count-only", count_only, "Print only the number of objects");
  en->add_option("--range", range, "Half-open index range a..b");
  en->add_option("--sample", sample, "Random subset of this many objects");
  en->add_option("--seed", seed, "Seed for --sample");

  std::string conjecture;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string checkpoint;
  bool force = false;
  auto* ver = app.add_subcommand("verify", "collision scan over a family");
  ver->add_option("--conjecture", conjecture, "Which scan")->required()->check(CLI::IsMember({"c2", "c3", "fair", "spec", "xgt", "multiset"}));
  ver->add_option("--n", n, "Size")->required();
  ver->add_option("--k", k, "Specialization order (spec only; default n-1 and n)");
  ver->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ver->add_option("--checkpoint", checkpoint, "Checkpoint file for resumable scans");
  ver->add_flag("--force", force, "Ignore the size guard");

  auto* iso = app.add_subcommand("iso", "isomorphism test and invariant comparison of two objects");
  add_inputs(iso, in, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  try {
    json result;
    if (cmd == "kpw") result = run_kpw(in, basis);
    else if (cmd == "xgt") result = run_xgt(in, k, top);
    else if (cmd == "spec") result = run_spec(in, spec_k);
    else if (cmd == "invariants") result = run_invariants(in);
    else if (cmd == "enumerate") result = run_enumerate(family, n, count_only, range, sample, seed);
    else if (cmd == "verify") {
      if (conjecture != "spec" && k) throw UsageError("--k applies to --conjecture spec only");
      ScanOptions opt;
      opt.jobs = jobs;
      opt.force = force;
      if (!checkpoint.empty()) opt.checkpoint = checkpoint;
      result = run_verify(conjecture, n, k, opt);
    } else if (cmd == "iso") {
      result = run_iso(in);
    }
    if (output == "json") {
      std::cout << result.dump(2) << "\n";
    } else {
      std::cout << render_text(cmd, result);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << " (raise QSYM_GUARD_MAX_N, or pass --force to verify)\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
