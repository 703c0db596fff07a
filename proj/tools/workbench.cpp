// Command-line front door: deterministic text-file verbs over the core
// library. Exit codes: 0 affirmative, 1 negative (UNSAT / not equal /
// absent), 2 input or budget error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <algorithm>

#include "CLI11.hpp"

#include "wb/coloured.hpp"
#include "wb/conviviality.hpp"
#include "wb/error.hpp"
#include "wb/gadgets.hpp"
#include "wb/gain.hpp"
#include "wb/io.hpp"
#include "wb/logic.hpp"
#include "wb/matroid.hpp"

using namespace wb;

namespace {

Limits g_limits;
unsigned g_threads = 1;

void apply_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kv;
    if (!(ls >> kv)) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("config: expected key=value, got " + kv);
    std::string key = kv.substr(0, eq);
    std::uint64_t value = std::stoull(kv.substr(eq + 1));
    auto set_int = [&](int& field) { field = static_cast<int>(value); };
    if (key == "assoc_check_max") set_int(g_limits.assoc_check_max);
    else if (key == "search_states") g_limits.search_states = value;
    else if (key == "cycle_budget") g_limits.cycle_budget = value;
    else if (key == "matroid_ground_max") set_int(g_limits.matroid_ground_max);
    else if (key == "frame_edges_max") set_int(g_limits.frame_edges_max);
    else if (key == "system_ground_max") set_int(g_limits.system_ground_max);
    else if (key == "colours_max") set_int(g_limits.colours_max);
    else if (key == "complement_ground_max") set_int(g_limits.complement_ground_max);
    else if (key == "cleft_ground_max") set_int(g_limits.cleft_ground_max);
    else if (key == "delta_max") set_int(g_limits.delta_max);
    else if (key == "formula_nodes_max") set_int(g_limits.formula_nodes_max);
    else if (key == "var_index_max") set_int(g_limits.var_index_max);
    else if (key == "conviviality_order_max") set_int(g_limits.conviviality_order_max);
    else if (key == "lambda_bits_max") g_limits.lambda_bits_max = value;
    else if (key == "axiom_pairs_max") g_limits.axiom_pairs_max = value;
    else throw InputError("config: unknown key " + key);
  }
}

FiniteGroup group_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return read_group_file(arg, g_limits);
  return parse_inline_group(arg, g_limits);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> element_list(const FiniteGroup& g, const std::string& csv, const char* what) {
  std::vector<int> out;
  for (const auto& name : split_list(csv)) {
    int e = g.index_of(name);
    if (e < 0) throw InputError(std::string(what) + ": unknown element " + name);
    out.push_back(e);
  }
  return out;
}

// assignments like Z1=u1+u2 or Z2= (empty set)
Interpretation parse_assignments(const std::vector<std::string>& specs,
                                 const std::vector<std::string>& ground, const char* what) {
  Interpretation out;
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || spec.size() < 2 || spec[0] != 'Z')
      throw InputError(std::string(what) + ": expected Zk=lab+lab, got " + spec);
    int var = std::stoi(spec.substr(1, eq - 1));
    Mask m = 0;
    std::string rest = spec.substr(eq + 1);
    if (!rest.empty()) {
      std::string cur;
      auto flush = [&]() {
        if (cur.empty()) return;
        auto it = std::find(ground.begin(), ground.end(), cur);
        if (it == ground.end())
          throw InputError(std::string(what) + ": unknown ground label " + cur);
        m |= bit(static_cast<int>(it - ground.begin()));
        cur.clear();
      };
      for (char c : rest) {
        if (c == '+')
          flush();
        else
          cur += c;
      }
      flush();
    }
    out[var] = m;
  }
  return out;
}

WordSystem::Word parse_word(const std::string& text) {
  WordSystem::Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 'x') throw InputError("word: expected 'x' at position " + std::to_string(i));
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw InputError("word: missing variable index");
    WordSystem::Letter letter;
    letter.var = std::stoi(text.substr(start, i - start));
    if (i < text.size() && text[i] == '\'') {
      letter.primed = true;
      ++i;
    }
    out.push_back(letter);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"gain-graph matroid workbench"};
  app.require_subcommand(1);
  std::string config_path;
  bool parallel = false;
  app.add_option("--config", config_path, "key=value overrides for the search caps");
  app.add_flag("--parallel", parallel, "enable deterministic internal parallelism");

  // check-sentence
  auto* cs = app.add_subcommand("check-sentence", "evaluate a sentence on a matroid/hypergraph");
  std::string cs_matroid, cs_formula;
  cs->add_option("--matroid", cs_matroid)->required();
  cs->add_option("--formula", cs_formula)->required();

  // frame-matroid
  auto* fm = app.add_subcommand("frame-matroid", "frame matroid of a gain graph");
  std::string fm_gg, fm_out;
  fm->add_option("--gaingraph", fm_gg)->required();
  fm->add_option("--out", fm_out)->required();

  // amalgam
  auto* am = app.add_subcommand("amalgam", "proper amalgam of two matroids");
  std::string am_left, am_right, am_out;
  am->add_option("--left", am_left)->required();
  am->add_option("--right", am_right)->required();
  am->add_option("--out", am_out)->required();

  // registry
  auto* rg = app.add_subcommand("registry", "registry value of a coloured system");
  std::string rg_system, rg_formula;
  int rg_delta = 0;
  std::vector<std::string> rg_assign;
  rg->add_option("--system", rg_system)->required();
  rg->add_option("--formula", rg_formula)->required();
  rg->add_option("--delta", rg_delta);
  rg->add_option("--assign", rg_assign);

  // equiv
  auto* eq = app.add_subcommand("equiv", "compare two systems by registry");
  std::string eq_a, eq_b, eq_formula;
  int eq_delta = 0;
  eq->add_option("--system-a", eq_a)->required();
  eq->add_option("--system-b", eq_b)->required();
  eq->add_option("--formula", eq_formula)->required();
  eq->add_option("--delta", eq_delta);

  // cleft-search
  auto* cf = app.add_subcommand("cleft-search", "search for a separating complement");
  std::string cf_a, cf_b, cf_formula, cf_out;
  int cf_max = 1, cf_delta = 0;
  std::vector<std::string> cf_assign_a, cf_assign_b;
  cf->add_option("--system-a", cf_a)->required();
  cf->add_option("--system-b", cf_b)->required();
  cf->add_option("--formula", cf_formula)->required();
  cf->add_option("--max-ground", cf_max)->required();
  cf->add_option("--delta", cf_delta);
  cf->add_option("--assign-a", cf_assign_a);
  cf->add_option("--assign-b", cf_assign_b);
  cf->add_option("--out", cf_out);

  // gadget
  auto* gd = app.add_subcommand("gadget", "build a gadget gaining");
  std::string gd_kind, gd_group, gd_gens, gd_gamma1, gd_gamma2, gd_out;
  std::string gd_s, gd_m, gd_d, gd_q;
  int gd_n = 1;
  bool gd_auto = false, gd_star = false;
  gd->add_option("kind", gd_kind, "h or lambda")->required();
  gd->add_option("--group", gd_group)->required();
  gd->add_option("--gens", gd_gens);
  gd->add_option("--gamma1", gd_gamma1);
  gd->add_option("--gamma2", gd_gamma2);
  gd->add_option("--N", gd_n);
  gd->add_option("--s", gd_s);
  gd->add_option("--m", gd_m);
  gd->add_option("--d", gd_d);
  gd->add_option("--q", gd_q);
  gd->add_flag("--auto-params", gd_auto);
  gd->add_flag("--star-only", gd_star);
  gd->add_option("--out", gd_out)->required();

  // conviviality
  auto* cv = app.add_subcommand("conviviality", "conviviality graphs of a finite group");
  std::string cv_group, cv_sub, cv_dot, cv_csv;
  cv->add_option("--group", cv_group)->required();
  cv->add_option("--subgroup", cv_sub)->required();
  cv->add_option("--dot", cv_dot)->required();
  cv->add_option("--csv", cv_csv);

  // solve-words
  auto* sw = app.add_subcommand("solve-words", "solve word equations over a group");
  std::string sw_group;
  std::vector<std::string> sw_eq, sw_neq;
  sw->add_option("--group", sw_group)->required();
  sw->add_option("--eq", sw_eq);
  sw->add_option("--neq", sw_neq);

  // pg
  auto* pg = app.add_subcommand("pg", "projective plane matroid");
  int pg_p = 2;
  std::string pg_out;
  pg->add_option("--p", pg_p)->required();
  pg->add_option("--out", pg_out)->required();

  CLI11_PARSE(app, argc, argv);
  if (!config_path.empty()) apply_config(config_path);
  if (parallel) g_threads = std::max(1u, std::thread::hardware_concurrency());

  if (*cs) {
    HypergraphFile f = read_hypergraph_file(cs_matroid, g_limits);
    Formula formula = read_formula_file(cs_formula, g_limits);
    if (!formula.is_sentence()) throw InputError("check-sentence: the formula must be a sentence");
    bool sat = satisfies(f.hypergraph, formula, {});
    std::cout << (sat ? "SAT" : "UNSAT") << "\n";
    return sat ? 0 : 1;
  }

  if (*fm) {
    GainGraphFile f = read_gaingraph_file(fm_gg, g_limits);
    Matroid m = frame_matroid(f.gaining, g_limits);
    write_matroid_file(fm_out, m);
    std::cout << "rank " << m.rank() << "\n";
    std::cout << "circuits " << circuits_of(m).size() << "\n";
    std::cout << "WROTE " << fm_out << "\n";
    return 0;
  }

  if (*am) {
    Matroid left = read_matroid_file(am_left, g_limits);
    Matroid right = read_matroid_file(am_right, g_limits);
    Matroid joined = proper_amalgam(left, right, g_limits);
    write_matroid_file(am_out, joined);
    std::cout << "rank " << joined.rank() << "\n";
    std::cout << "WROTE " << am_out << "\n";
    return 0;
  }

  if (*rg) {
    ColouredSystem system = read_system_file(rg_system, g_limits);
    Formula formula = read_formula_file(rg_formula, g_limits);
    int delta = rg_delta > 0 ? rg_delta : formula.min_delta();
    Interpretation sigma = parse_assignments(rg_assign, system.ground, "registry");
    RegistryValue value = registry(system, formula, sigma, formula.vars(), delta, g_limits);
    std::cout << "REGISTRY " << value.to_string() << "\n";
    return 0;
  }

  if (*eq) {
    ColouredSystem a = read_system_file(eq_a, g_limits);
    ColouredSystem b = read_system_file(eq_b, g_limits);
    Formula formula = read_formula_file(eq_formula, g_limits);
    if (!formula.is_sentence()) throw InputError("equiv: the formula must be a sentence");
    int delta = eq_delta > 0 ? eq_delta : formula.min_delta();
    RegistryValue ra = registry(a, formula, {}, formula.vars(), delta, g_limits);
    RegistryValue rb = registry(b, formula, {}, formula.vars(), delta, g_limits);
    if (ra == rb) {
      std::cout << "EQUAL (registry match)\n";
      return 0;
    }
    std::cout << "DIFFER (registry mismatch)\n";
    return 1;
  }

  if (*cf) {
    ColouredSystem a = read_system_file(cf_a, g_limits);
    ColouredSystem b = read_system_file(cf_b, g_limits);
    Formula formula = read_formula_file(cf_formula, g_limits);
    Interpretation sa = parse_assignments(cf_assign_a, a.ground, "cleft-search");
    Interpretation sb = parse_assignments(cf_assign_b, b.ground, "cleft-search");
    auto hit = cleft_search(a, b, formula, sa, sb, cf_max, g_limits, g_threads);
    if (!hit) {
      std::cout << "ABSENT\n";
      return 1;
    }
    if (!cf_out.empty()) write_complement_file(cf_out, hit->complement);
    std::cout << "satisfied side " << hit->satisfied_side << "\n";
    for (auto [v, m] : hit->tau)
      std::cout << "tau Z" << v << " " << mask_to_string(m, hit->complement.ground) << "\n";
    std::cout << "CLEFT FOUND ground " << hit->complement.ground.size() << "\n";
    return 0;
  }

  if (*gd) {
    FiniteGroup group = group_argument(gd_group);
    if (gd_kind == "h") {
      if (gd_gens.empty()) throw InputError("gadget h: --gens required");
      GeneratingSet gens = GeneratingSet::make(group, element_list(group, gd_gens, "gadget"));
      int s = -1, m = -1;
      std::vector<int> d, q;
      if (gd_auto) {
        auto params = find_h_params(group, gens, gd_n, g_limits);
        if (!params) {
          std::cout << "ABSENT\n";
          return 1;
        }
        s = params->s_elem;
        m = params->m_elem;
        d = params->d_values;
        q = params->q_values;
      } else {
        if (gd_s.empty() || gd_m.empty()) throw InputError("gadget h: --s and --m or --auto-params");
        s = element_list(group, gd_s, "gadget")[0];
        m = element_list(group, gd_m, "gadget")[0];
        if (!gd_star) {
          d = element_list(group, gd_d, "gadget");
          q = element_list(group, gd_q, "gadget");
        }
      }
      HGadget h = build_h_gadget(group, gens, s, m, d, q, gd_n, gd_star, g_limits);
      write_gaingraph_file(gd_out, h.gaining, &h.manifest);
      std::cout << "edges " << h.gaining.graph.edge_count() << "\n";
      std::cout << "s " << group.name(s) << " m " << group.name(m) << "\n";
      std::cout << "WROTE " << gd_out << "\n";
      return 0;
    }
    if (gd_kind == "lambda") {
      if (gd_gamma1.empty() || gd_gamma2.empty())
        throw InputError("gadget lambda: --gamma1 and --gamma2 required");
      std::vector<int> g1 = subgroup_generate(group, element_list(group, gd_gamma1, "gadget"));
      std::vector<int> g2 = subgroup_generate(group, element_list(group, gd_gamma2, "gadget"));
      int m = -1;
      std::vector<int> d, q;
      if (gd_auto) {
        LambdaSearchOptions opt;
        if (!gd_m.empty()) opt.m_elem = element_list(group, gd_m, "gadget")[0];
        auto params = find_lambda_params(group, g1, g2, g_limits, opt);
        if (!params) {
          std::cout << "ABSENT\n";
          return 1;
        }
        m = params->m_elem;
        d = params->d_values;
        q = params->q_values;
      } else {
        if (gd_m.empty()) throw InputError("gadget lambda: --m or --auto-params");
        m = element_list(group, gd_m, "gadget")[0];
        if (!gd_star) {
          d = element_list(group, gd_d, "gadget");
          q = element_list(group, gd_q, "gadget");
        }
      }
      LambdaGadget lg = build_lambda_gadget(group, g1, g2, m, d, q, gd_star, g_limits);
      write_gaingraph_file(gd_out, lg.gaining, &lg.manifest);
      std::cout << "edges " << lg.gaining.graph.edge_count() << "\n";
      std::cout << "WROTE " << gd_out << "\n";
      return 0;
    }
    throw InputError("gadget: kind must be h or lambda");
  }

  if (*cv) {
    FiniteGroup ambient = group_argument(cv_group);
    FiniteGroup f_group = group_argument(cv_sub);
    ConvivialityGraph g = elementary_conviviality_graph(ambient, f_group, g_limits);
    ConvivialityGraph q = quotient_conviviality_graph(g);
    std::string dot = conviviality_dot(g, "elementary") + conviviality_dot(q, "quotient");
    write_text_file(cv_dot, dot);
    if (!cv_csv.empty()) write_text_file(cv_csv, conviviality_csv(g));
    std::size_t edges = 0;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      for (std::size_t j = i; j < g.vertices.size(); ++j)
        if (g.adjacent(i, j)) ++edges;
    std::cout << "VERTICES " << g.vertices.size() << " EDGES " << edges << " QUOTIENT "
              << q.vertices.size() << "\n";
    return 0;
  }

  if (*sw) {
    FiniteGroup group = group_argument(sw_group);
    WordSystem sys;
    for (const auto& w : sw_eq) sys.equalities.push_back(parse_word(w));
    for (const auto& w : sw_neq) sys.inequalities.push_back(parse_word(w));
    sys.arity = 1;
    for (const auto& w : sys.equalities)
      for (const auto& l : w) sys.arity = std::max(sys.arity, l.var);
    for (const auto& w : sys.inequalities)
      for (const auto& l : w) sys.arity = std::max(sys.arity, l.var);
    auto witness = solves_pair(group, sys, g_limits);
    if (!witness) {
      std::cout << "ABSENT\n";
      return 1;
    }
    std::cout << "SOLVED";
    for (int e : *witness) std::cout << ' ' << group.name(e);
    std::cout << "\n";
    return 0;
  }

  if (*pg) {
    Matroid m = projective_plane(pg_p, g_limits);
    write_matroid_file(pg_out, m);
    std::cout << "elements " << m.size() << " rank " << m.rank() << "\n";
    std::cout << "WROTE " << pg_out << "\n";
    return 0;
  }

  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    std::cout << "ERROR: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "ERROR: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "ERROR: " << e.what() << "\n";
    return 2;
  }
}
