// twistlab: batch front end for the library. JSON on stdout, diagnostics on
// stderr. Exit 0 on success, 1 on a failed verification or computation,
// 2 on bad usage.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twistlab/errors.hpp"
#include "twistlab/fixtures.hpp"
#include "twistlab/mdata.hpp"
#include "twistlab/verify.hpp"

namespace fs = std::filesystem;
using namespace twistlab;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GroupPtr load_group(const std::string& text) {
  if (fs::exists(text)) return group_from_json(read_json(text));
  try {
    return named_group(text);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

// A cocycle is a cochain JSON file, "zero", "cyclic:<s>", "h3:<index>" into
// the class list of the group, or "sl2_3:<i>,<j>".
Cochain load_cocycle(const GroupPtr& g, const std::string& text) {
  if (fs::exists(text)) return cochain_from_json(read_json(text), g);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "zero") return Cochain(g, 3);
    if (kind == "cyclic") return cyclic_cocycle(g, std::stoll(arg));
    if (kind == "h3") {
      const auto reps = h3_representatives(g);
      const auto i = std::stoul(arg);
      if (i >= reps.size()) throw UsageError("h3 index out of range (" + std::to_string(reps.size()) + " classes)");
      return reps[i];
    }
    if (kind == "sl2_3") {
      const auto ij = split(arg, ',');
      if (ij.size() != 2) throw UsageError("expected sl2_3:<i>,<j>");
      if (g != sl2_3_classes().group()) throw UsageError("sl2_3 cocycles need the sl2_3 group");
      return sl2_3_classes().cocycle(std::stoi(ij[0]), std::stoi(ij[1]));
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad cocycle argument '" + text + "'");
  }
  throw UsageError("unknown cocycle '" + text + "'");
}

// "center", "involution", "trivial", "all" or a comma separated element list.
Subgroup load_subgroup(const GroupPtr& g, const std::string& text) {
  if (text == "center") return center_and_involutions(g).center;
  if (text == "trivial") return Subgroup::trivial(g);
  if (text == "all") return Subgroup::whole(g);
  if (text == "involution") {
    const auto info = center_and_involutions(g);
    if (!info.unique_involution) throw UsageError(g->name() + " has no unique involution");
    return Subgroup(g, {0, info.involutions[0]});
  }
  std::vector<Element> el;
  try {
    for (const auto& s : split(text, ',')) el.push_back(std::stoi(s));
  } catch (const std::logic_error&) {
    throw UsageError("bad subgroup '" + text + "'");
  }
  for (Element x : el)
    if (x < 0 || x >= g->order()) throw UsageError("element out of range in '" + text + "'");
  return Subgroup::generated_by(g, el);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json metric_summary(const BClassification& c) {
  json q = json::array();
  for (const auto& v : c.q_values) q.push_back(v.to_string());
  return {{"kind", to_string(c.kind)}, {"q", q}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: twisted quantum doubles and their modular data"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  bool markdown = false;
  app.add_option("--seed", seed, "seed for numeric splitting and random tests");
  app.add_flag("--markdown", markdown, "render tables instead of JSON where available");

  std::string group_spec, cocycle_spec, subgroup_spec, out_dir, file1, file2, target;
  int pair_index = -1;
  bool exact = false;
  double tol = 1e-8;
  std::vector<std::string> verify_groups;
  std::string suite;

  auto* group = app.add_subcommand("group", "group information");
  group->require_subcommand(1);
  auto* group_info = group->add_subcommand("info", "order, center, classes, characters");
  group_info->add_option("group", group_spec, "fixture name or group JSON file")->required();

  auto* coh = app.add_subcommand("coh", "cohomology");
  coh->require_subcommand(1);
  auto* coh_h3 = coh->add_subcommand("h3", "H^3 invariants and generators");
  coh_h3->add_option("group", group_spec)->required();
  coh_h3->add_option("--out-dir", out_dir, "write one cochain file per generator");

  auto* tqd = app.add_subcommand("tqd", "admissible pairs");
  tqd->require_subcommand(1);
  auto* tqd_classify = tqd->add_subcommand("classify", "classification of every admissible pair");
  tqd_classify->add_option("group", group_spec)->required();
  tqd_classify->add_option("cocycle", cocycle_spec, "file, zero, cyclic:<s>, h3:<i> or sl2_3:<i>,<j>")->required();
  tqd_classify->add_option("A", subgroup_spec, "center, involution, trivial, all or elements")->required();

  auto* mdata = app.add_subcommand("mdata", "modular data of the double");
  mdata->require_subcommand(1);
  auto* mdata_compute = mdata->add_subcommand("compute", "modular data JSON");
  mdata_compute->add_option("group", group_spec)->required();
  mdata_compute->add_option("cocycle", cocycle_spec)->required();
  mdata_compute->add_option("--restrict", subgroup_spec, "restrict to the centralizer of the currents of a pair on A");
  mdata_compute->add_option("--pair", pair_index, "index of the admissible pair (default 0)");
  mdata_compute->add_flag("--exact", exact, "emit S~ as exact cyclotomic strings");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--group", verify_groups, "restrict to these fixtures");

  auto* search = app.add_subcommand("search", "searches");
  search->require_subcommand(1);
  auto* search_omega = search->add_subcommand("omega0", "classes whose restricted T~ matches a target");
  search_omega->add_option("--group", group_spec)->required();
  search_omega->add_option("--target", target, "modular data JSON carrying the target T~")->required();
  search_omega->add_option("--out-dir", out_dir, "write the restricted data of each match");

  auto* compare = app.add_subcommand("compare", "label bijection between two modular data files");
  compare->add_option("md1", file1)->required();
  compare->add_option("md2", file2)->required();
  compare->add_option("--tol", tol, "numeric tolerance when a side has no exact S~");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*group_info) {
      const auto g = load_group(group_spec);
      const auto info = center_and_involutions(g);
      json classes = json::array();
      for (const auto& c : g->conjugacy_classes()) classes.push_back(c.elements);
      emit({{"name", g->name()},
            {"order", g->order()},
            {"abelian", g->is_abelian()},
            {"exponent", g->exponent()},
            {"center", info.center.elements()},
            {"classes", classes},
            {"character_group", CharacterGroup(g).invariants()},
            {"involutions", info.involutions},
            {"unique_involution", info.unique_involution}});
      return 0;
    }

    if (*coh_h3) {
      const auto g = load_group(group_spec);
      const auto h = cohomology(g, 3);
      json gens = json::array();
      for (std::size_t i = 0; i < h.generators().size(); ++i) {
        const auto j = cochain_to_json(h.generators()[i]);
        if (out_dir.empty()) {
          gens.push_back(j);
        } else {
          fs::create_directories(out_dir);
          const auto path = fs::path(out_dir) / ("h3_gen" + std::to_string(i) + ".json");
          std::ofstream(path) << j.dump() << "\n";
          gens.push_back(path.string());
        }
      }
      emit({{"group", g->name()}, {"invariants", h.invariants()}, {"order", h.order()}, {"generators", gens}});
      return 0;
    }

    if (*tqd_classify) {
      const auto g = load_group(group_spec);
      const TwistedContext ctx(g, load_cocycle(g, cocycle_spec));
      const auto a = load_subgroup(g, subgroup_spec);
      json pairs = json::array();
      for (const auto& p : admissible_pairs(ctx, a)) {
        auto j = metric_summary(classify(p));
        j["pair"] = admissible_pair_to_json(p);
        pairs.push_back(j);
      }
      emit({{"group", g->name()}, {"A", a.elements()}, {"pairs", pairs}});
      return 0;
    }

    if (*mdata_compute) {
      const auto g = load_group(group_spec);
      const TwistedContext ctx(g, load_cocycle(g, cocycle_spec));
      const auto dd = compute_double(ctx, seed);
      ModularData md = dd.md;
      if (!subgroup_spec.empty()) {
        const auto pairs = admissible_pairs(ctx, load_subgroup(g, subgroup_spec));
        const int i = pair_index < 0 ? 0 : pair_index;
        if (i >= static_cast<int>(pairs.size()))
          throw UsageError("pair index out of range (" + std::to_string(pairs.size()) + " pairs)");
        md = restrict_to_pair(dd, pairs[i]).md;
      } else if (pair_index >= 0) {
        throw UsageError("--pair needs --restrict");
      }
      if (markdown) {
        std::cout << modular_data_markdown(md);
        return 0;
      }
      if (!exact) md.s_exact.clear();
      auto j = modular_data_to_json(md);
      j["seed"] = seed;
      emit(j);
      return 0;
    }

    if (*verify) {
      VerifyOptions opt;
      opt.seed = seed;
      opt.groups = verify_groups;
      const auto rep = run_suite(suite, opt);
      if (markdown)
        std::cout << rep.markdown();
      else
        emit(rep.to_json());
      if (!rep.ok()) {
        std::cerr << "verify " << suite << ": failed\n";
        return 1;
      }
      return 0;
    }

    if (*search_omega) {
      const auto g = load_group(group_spec);
      const auto md = modular_data_from_json(read_json(target));
      const bool sl = g == sl2_3_classes().group();
      const auto candidates = sl ? sl2_3_classes().all() : h3_representatives(g);
      const auto center = center_and_involutions(g).center;
      json matches = json::array();
      for (const auto& m : search_omega0(g, candidates, center, md.twists, seed)) {
        json j{{"candidate", m.candidate}, {"pair", m.pair}, {"rank", m.data.md.rank()}};
        if (sl) j["cocycle"] = "sl2_3:" + std::to_string(m.candidate / 3) + "," + std::to_string(m.candidate % 3);
        if (const auto p = modular_data_equivalent(m.data.md, md, tol)) j["bijection"] = *p;
        if (!out_dir.empty()) {
          fs::create_directories(out_dir);
          const auto path = fs::path(out_dir) / ("omega0_" + std::to_string(m.candidate) + ".json");
          std::ofstream(path) << modular_data_to_json(m.data.md).dump(2) << "\n";
          j["file"] = path.string();
        }
        matches.push_back(j);
      }
      emit({{"group", g->name()}, {"candidates", candidates.size()}, {"matches", matches}});
      return matches.empty() ? 1 : 0;
    }

    if (*compare) {
      const auto a = modular_data_from_json(read_json(file1));
      const auto b = modular_data_from_json(read_json(file2));
      const auto p = modular_data_equivalent(a, b, tol);
      emit({{"exact", a.has_exact() && b.has_exact()}, {"bijection", p ? json(*p) : json(nullptr)}});
      return p ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameter& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
