#include "relkit/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "relkit/blocks.hpp"
#include "relkit/catalog.hpp"
#include "relkit/closure.hpp"
#include "relkit/config.hpp"
#include "relkit/error.hpp"
#include "relkit/invariance.hpp"
#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/relation.hpp"
#include "relkit/subset_action.hpp"
#include "relkit/verify.hpp"
#include "relkit/wreath.hpp"

namespace relkit {
namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

PermutationGroup parse_generator_list(const std::string& spec) {
  std::vector<ParsedPermutation> parsed;
  int degree = 1;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t stop = spec.find(';', start);
    std::string piece =
        trim(spec.substr(start, stop == std::string::npos ? stop
                                                          : stop - start));
    if (!piece.empty()) {
      parsed.push_back(parse_permutation_loose(piece));
      const ParsedPermutation& p = parsed.back();
      degree = std::max(degree, p.declared_degree.value_or(p.perm.degree()));
    }
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  if (parsed.empty()) throw parse_error("empty generator list");
  std::vector<Permutation> gens;
  for (const ParsedPermutation& p : parsed) {
    if (p.declared_degree && *p.declared_degree != degree)
      throw parse_error("generators declare conflicting degrees @" +
                        std::to_string(*p.declared_degree) + " and @" +
                        std::to_string(degree));
    gens.push_back(p.perm.extended(degree));
  }
  return PermutationGroup(degree, gens);
}

PermutationGroup parse_wreath_spec(const std::string& spec) {
  auto open = spec.find('(');
  if (spec.back() != ')')
    throw parse_error("wreath spec must end with ')'", spec.size() - 1);
  std::string body = spec.substr(open + 1, spec.size() - open - 2);
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')') --depth;
    if (body[i] == ',' && depth == 0) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    throw parse_error("wreath spec needs two comma-separated operands");
  PermutationGroup k = parse_group_spec(body.substr(0, split));
  PermutationGroup l = parse_group_spec(body.substr(split + 1));
  return wreath_product(k, l).product;
}

Relation load_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open relation file: " + path);
  try {
    Json j = Json::parse(in);
    int degree = j.at("degree").get<int>();
    auto sets = j.at("sets").get<std::vector<std::vector<int>>>();
    // files are 1-based; the library numbers points from 0
    for (auto& s : sets)
      for (int& p : s) {
        if (p < 1)
          throw parse_error("relation file " + path +
                            ": points are 1-based, got " + std::to_string(p));
        --p;
      }
    return relation_from_sets(degree, sets);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("relation file ") + path + ": " + e.what());
  }
}

mask_t parse_point_set(const std::string& text) {
  mask_t m = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(',', start);
    std::string piece =
        trim(text.substr(start, stop == std::string::npos ? stop
                                                          : stop - start));
    if (!piece.empty()) {
      std::size_t used = 0;
      int point = 0;
      try {
        point = std::stoi(piece, &used);
      } catch (const std::exception&) {
        throw parse_error("bad point '" + piece + "' in set");
      }
      if (used != piece.size() || point < 1 || point > 64)
        throw parse_error("bad point '" + piece + "' in set");
      m |= mask_t{1} << (point - 1);
    }
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  if (m == 0) throw parse_error("empty point set");
  return m;
}

std::vector<int> points_1based(mask_t m) {
  std::vector<int> pts;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) pts.push_back(i + 1);
  return pts;
}

Json group_json(const PermutationGroup& g) {
  Json gens = Json::array();
  for (const Permutation& p : g.generators())
    if (!p.is_identity()) gens.push_back(to_cycle_string(p));
  return Json{{"degree", g.degree()}, {"generators", gens}};
}

Json relation_json(const Relation& r) {
  Json sets = Json::array();
  for (mask_t m : r.members()) sets.push_back(points_1based(m));
  return Json{{"degree", r.degree()}, {"sets", sets}};
}

const char* sym_alt_name(SymAltKind kind) {
  switch (kind) {
    case SymAltKind::Symmetric: return "symmetric";
    case SymAltKind::Alternating: return "alternating";
    default: return "neither";
  }
}

Json group_facts(const PermutationGroup& g) {
  bool transitive = g.is_transitive();
  return Json{{"degree", g.degree()},
              {"order", g.order()},
              {"transitive", transitive},
              {"primitive", transitive && is_primitive(g)},
              {"solvable", is_solvable(g)},
              {"sym_alt", sym_alt_name(sym_alt_kind(g))}};
}

const char* a_class_name(AClass v) {
  switch (v) {
    case AClass::a_imprimitive: return "a_imprimitive";
    case AClass::a_prime_imprimitive: return "a_prime_imprimitive";
    case AClass::both: return "both";
    default: return "neither";
  }
}

Json membership_json(const LinkAMembership& m) {
  return Json{{"census_known", m.census_known},
              {"is_sym_or_alt", m.is_sym_or_alt},
              {"in_L_NR", m.in_L_NR},
              {"in_L_SR", m.in_L_SR},
              {"is_explicit_small", m.is_explicit_small},
              {"in_A", m.in_A}};
}

Json chain_report_json(const ChainReport& cr, Json& caps_hit) {
  Json chains = Json::array();
  bool uncensused = false;
  for (const ImprimitivityChain& chain : cr.chains) {
    Json links = Json::array();
    for (const ChainLink& link : chain.links) {
      links.push_back(Json{{"degree", link.degree},
                           {"order", link.order},
                           {"census_fingerprint", link.census_fingerprint}});
      if (link.census_fingerprint == "uncensused") uncensused = true;
    }
    chains.push_back(links);
  }
  if (cr.truncated) caps_hit.push_back("max_chains");
  if (uncensused) caps_hit.push_back("census_work_cap");
  return Json{{"chain_count", cr.chains.size()},
              {"truncated", cr.truncated},
              {"fingerprint_merges", cr.fingerprint_merges},
              {"chains", chains}};
}

}  // namespace

PermutationGroup parse_group_spec(const std::string& raw) {
  std::string spec = trim(raw);
  if (spec.empty()) throw parse_error("empty group spec");
  if (spec.rfind("wr", 0) == 0) {
    auto rest = trim(spec.substr(2));
    if (!rest.empty() && rest.front() == '(') return parse_wreath_spec(spec);
  }
  if (spec.front() == '(') return parse_generator_list(spec);
  try {
    return load(spec);
  } catch (const error& e) {
    throw parse_error(e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"relkit: permutation groups acting on unordered subsets"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--max-degree-exhaustive",
                 cfg.exhaustive_invariance_max_degree,
                 "Degree cap for unseeded invariance-group search");
  app.add_option("--census-work-cap", cfg.census_work_cap,
                 "Work cap for the regular-set census");

  Json report;
  Json caps_hit = Json::array();
  Json criterion_seconds = Json::array();
  int exit_code = 0;

  auto sub = [&](const char* name, const char* desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->fallthrough();
    return c;
  };
  auto finish = [&](const char* command, Json inputs, Json results) {
    report = Json{{"command", command},
                  {"inputs", std::move(inputs)},
                  {"results", std::move(results)},
                  {"caps_hit", caps_hit}};
  };

  // order
  {
    auto* c = sub("order", "Order and basic invariants of a group");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      finish("order", Json{{"group", *spec}}, group_facts(g));
    });
  }

  // census
  {
    auto* c = sub("census", "Regular-set census of a group");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      RegularSetCensus census = regular_set_census(g, cfg);
      Json examples = Json::array();
      for (int k : census.sizes_with_regular)
        examples.push_back(Json{
            {"size", k}, {"set", points_1based(census.regular_sets(k, 1).at(0))}});
      finish("census", Json{{"group", *spec}},
             Json{{"degree", g.degree()},
                  {"order", g.order()},
                  {"sizes_with_regular", census.sizes_with_regular},
                  {"regular_count_by_size", census.regular_count_by_size},
                  {"least_regular_set_by_size", examples},
                  {"work", census.work}});
    });
  }

  // orbits
  {
    auto* c = sub("orbits", "Orbits on k-subsets");
    auto spec = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    c->add_option("group", *spec, "Group spec")->required();
    c->add_option("--k", *k, "Subset size")->required();
    c->callback([&, spec, k] {
      PermutationGroup g = parse_group_spec(*spec);
      OrbitPartition part = orbits_on_k_subsets(g, *k);
      Json reps = Json::array();
      for (mask_t rep : part.representatives)
        reps.push_back(points_1based(rep));
      finish("orbits", Json{{"group", *spec}, {"k", *k}},
             Json{{"degree", g.degree()},
                  {"order", g.order()},
                  {"k", *k},
                  {"orbit_count", part.orbit_count()},
                  {"orbit_sizes", part.orbit_sizes},
                  {"representatives", reps}});
    });
  }

  // closure
  {
    auto* c = sub("closure", "Orbit closure, or the k-closure with --k");
    auto spec = std::make_shared<std::string>();
    auto k = std::make_shared<int>(-1);
    c->add_option("group", *spec, "Group spec")->required();
    c->add_option("--k", *k, "Close at one subset size only");
    c->callback([&, spec, k] {
      PermutationGroup g = parse_group_spec(*spec);
      if (*k >= 0) {
        PermutationGroup closed = k_closure(g, *k, cfg);
        finish("closure", Json{{"group", *spec}, {"k", *k}},
               Json{{"degree", g.degree()},
                    {"order", g.order()},
                    {"k", *k},
                    {"k_closure_order", closed.order()},
                    {"k_closure", group_json(closed)}});
        return;
      }
      PermutationGroup star = orbit_closure(g, cfg);
      finish("closure", Json{{"group", *spec}},
             Json{{"degree", g.degree()},
                  {"order", g.order()},
                  {"star_order", star.order()},
                  {"c", star.order() / g.order()},
                  {"orbit_closed", star.order() == g.order()},
                  {"star", group_json(star)}});
    });
  }

  // relation-group
  {
    auto* c = sub("relation-group",
                  "Least invariance group over preserved relations");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      RelationGroupReport rc = relation_closure(g, cfg);
      if (!rc.exact) caps_hit.push_back("relation_closure_inexact");
      Json results{{"degree", g.degree()},
                   {"order", rc.group_order},
                   {"c", rc.c},
                   {"closure_order", rc.closure_order},
                   {"r", rc.r_of_g},
                   {"exact", rc.exact},
                   {"is_relation_group", rc.is_relation_group}};
      if (rc.witness_relation)
        results["witness_relation"] = relation_json(*rc.witness_relation);
      finish("relation-group", Json{{"group", *spec}}, std::move(results));
    });
  }

  // invariance-group
  {
    auto* c = sub("invariance-group", "Invariance group of a relation");
    auto file = std::make_shared<std::string>();
    auto seed = std::make_shared<std::string>();
    c->add_option("--relation", *file, "Relation file {degree, sets}")
        ->required();
    c->add_option("seed", *seed,
                  "Optional subgroup of the result, enables any degree");
    c->callback([&, file, seed] {
      Relation r = load_relation_file(*file);
      PermutationGroup g =
          seed->empty() ? invariance_group(r, cfg)
                        : invariance_group(r, parse_group_spec(*seed), cfg);
      Json inputs{{"relation", *file}};
      if (!seed->empty()) inputs["seed"] = *seed;
      finish("invariance-group", std::move(inputs),
             Json{{"degree", g.degree()},
                  {"order", g.order()},
                  {"group", group_json(g)}});
    });
  }

  // wreath
  {
    auto* c = sub("wreath", "Imprimitive wreath product of two groups");
    auto base = std::make_shared<std::string>();
    auto top = std::make_shared<std::string>();
    c->add_option("base", *base, "Block group K")->required();
    c->add_option("top", *top, "Transitive top group L")->required();
    c->callback([&, base, top] {
      WreathAction wr =
          wreath_product(parse_group_spec(*base), parse_group_spec(*top));
      finish("wreath", Json{{"base", *base}, {"top", *top}},
             Json{{"d", wr.d},
                  {"s", wr.s},
                  {"degree", wr.product.degree()},
                  {"order", wr.product.order()},
                  {"base", group_json(wr.base)},
                  {"top", group_json(wr.top)},
                  {"product", group_json(wr.product)}});
    });
  }

  // chains
  {
    auto* c = sub("chains", "Imprimitivity chains with primitive links");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      ChainReport cr = imprimitivity_chains(g, cfg);
      Json results = chain_report_json(cr, caps_hit);
      finish("chains", Json{{"group", *spec}}, std::move(results));
    });
  }

  // classify-A
  {
    auto* c = sub("classify-A",
                  "Chain classification against the obstruction list");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      AClassification cls = classify_A_prime(g, cfg);
      Json memberships = Json::array();
      for (const auto& chain : cls.memberships) {
        Json row = Json::array();
        for (const LinkAMembership& m : chain) row.push_back(membership_json(m));
        memberships.push_back(row);
      }
      Json results{{"verdict", a_class_name(cls.verdict)}};
      results["chains"] = chain_report_json(cls.chains, caps_hit);
      results["memberships"] = memberships;
      finish("classify-A", Json{{"group", *spec}}, std::move(results));
    });
  }

  // define-subgroup
  {
    auto* c = sub("define-subgroup",
                  "Defining relation for a subgroup of a wreath product");
    auto base = std::make_shared<std::string>();
    auto top = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    auto rdelta = std::make_shared<std::string>();
    auto rsigma = std::make_shared<std::string>();
    auto wtext = std::make_shared<std::string>();
    c->add_option("base", *base, "Block group K")->required();
    c->add_option("top", *top, "Top group L")->required();
    c->add_option("subgroup", *target, "Subgroup of K wr L to define")
        ->required();
    c->add_option("--r-delta", *rdelta, "Relation file defining K")
        ->required();
    c->add_option("--r-sigma", *rsigma, "Relation file defining L")
        ->required();
    c->add_option("--w", *wtext, "Regular set for K wr L, e.g. 1,2,7")
        ->required();
    c->callback([&, base, top, target, rdelta, rsigma, wtext] {
      PermutationGroup k = parse_group_spec(*base);
      PermutationGroup l = parse_group_spec(*top);
      PermutationGroup g = parse_group_spec(*target);
      Relation rd = load_relation_file(*rdelta);
      Relation rs = load_relation_file(*rsigma);
      mask_t w = parse_point_set(*wtext);
      Relation defining = rela5_define_subgroup(k, l, rd, rs, w, g, cfg);
      finish("define-subgroup",
             Json{{"base", *base},
                  {"top", *top},
                  {"subgroup", *target},
                  {"r_delta", *rdelta},
                  {"r_sigma", *rsigma},
                  {"w", points_1based(w)}},
             Json{{"degree", defining.degree()},
                  {"subgroup_order", g.order()},
                  {"relation_size", defining.size()},
                  {"arities", defining.arities()},
                  {"relation", relation_json(defining)},
                  {"verified", true}});
    });
  }

  // verify-paper
  {
    auto* c = sub("verify-paper", "Run the acceptance battery");
    auto level = std::make_shared<std::string>("quick");
    c->add_option("--level", *level, "quick (degree <= 8) or full")
        ->check(CLI::IsMember({"quick", "full"}));
    c->callback([&, level] {
      VerifyLevel lv =
          *level == "full" ? VerifyLevel::full : VerifyLevel::quick;
      VerifyReport rep = verify_battery(lv, cfg);
      Json criteria = Json::array();
      for (const CriterionResult& r : rep.results) {
        criteria.push_back(Json{{"number", r.number},
                                {"name", r.name},
                                {"passed", r.passed()},
                                {"checks_ok", r.checks_ok},
                                {"within_budget", r.within_budget},
                                {"checks", r.checks},
                                {"skipped", r.skipped},
                                {"budget_seconds", r.budget_seconds},
                                {"detail", r.detail}});
        criterion_seconds.push_back(r.seconds);
      }
      finish("verify-paper", Json{{"level", *level}},
             Json{{"all_passed", rep.all_passed()}, {"criteria", criteria}});
      if (!rep.all_passed()) exit_code = 2;
    });
  }

  // export
  {
    auto* c = sub("export", "Group as JSON {degree, generators}");
    auto spec = std::make_shared<std::string>();
    c->add_option("group", *spec, "Group spec")->required();
    c->callback([&, spec] {
      PermutationGroup g = parse_group_spec(*spec);
      finish("export", Json{{"group", *spec}},
             Json{{"group", group_json(g)}});
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  auto emit_error = [&](const char* kind, const std::string& message,
                        Json extra = Json::object()) {
    Json err{{"kind", kind}, {"message", message}};
    for (auto& [key, value] : extra.items()) err[key] = value;
    out = Json{{"error", err}}.dump(2) + "\n";
  };

  auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out = app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 4;
  } catch (const cap_exceeded& e) {
    emit_error("cap_exceeded", e.what(), Json{{"cap", e.cap_name}});
    return 3;
  } catch (const parse_error& e) {
    Json extra = Json::object();
    if (e.pos != parse_error::npos) extra["position"] = e.pos;
    emit_error("parse", e.what(), extra);
    return 4;
  } catch (const precondition_error& e) {
    emit_error("precondition", e.what(),
               Json{{"precondition", e.precondition}});
    return 4;
  } catch (const error& e) {
    emit_error("error", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  Json top{{"report", report}, {"timing_seconds", seconds}};
  if (!criterion_seconds.empty()) top["criterion_seconds"] = criterion_seconds;
  out = top.dump(2) + "\n";
  return exit_code;
}

}  // namespace relkit
