#include "rationalizer/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rationalizer {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& code, const std::string& msg) {
  throw ScenarioError(code, msg);
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rat parse_rat_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(BigInt(v.get<long long>()));
  if (v.is_number_float())
    fail("decimals-forbidden", "decimals forbidden; use p/q at " + where);
  if (v.is_string()) {
    auto r = try_parse_rational(v.get<std::string>());
    if (!r) {
      if (v.get<std::string>().find('.') != std::string::npos)
        fail("decimals-forbidden", "decimals forbidden; use p/q at " + where);
      fail("schema", "not a rational at " + where + ": '" + v.get<std::string>() + "'");
    }
    return *r;
  }
  fail("schema", "expected a rational at " + where);
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("schema", "missing '" + key + "' in " + where);
  return *it;
}

TreeSpec parse_tree(const json& node, const std::string& where) {
  TreeSpec spec;
  if (!node.is_object()) fail("schema", "tree node must be an object at " + where);
  if (auto mv = node.find("moves"); mv != node.end()) {
    for (auto it = mv->begin(); it != mv->end(); ++it) {
      std::vector<std::string> acts;
      for (const auto& a : it.value()) acts.push_back(a.get<std::string>());
      spec.moves.push_back({it.key(), std::move(acts)});
    }
    const auto& ch = need(node, "children", where);
    for (auto it = ch.begin(); it != ch.end(); ++it)
      spec.children.push_back({it.key(), parse_tree(it.value(), where + "/" + it.key())});
  }
  return spec;
}

json tree_to_json(const ExtensiveForm& form, NodeId n) {
  json out = json::object();
  if (form.is_terminal(n)) return out;
  json moves = json::object();
  for (PlayerId p : form.active_players(n)) moves[form.players()[p]] = form.actions(n, p);
  out["moves"] = std::move(moves);
  json children = json::object();
  const auto& active = form.active_players(n);
  std::vector<int> radix;
  for (PlayerId p : active) radix.push_back(static_cast<int>(form.actions(n, p).size()));
  int total = 1;
  for (int r : radix) total *= r;
  for (int c = 0; c < total; ++c) {
    int rem = c;
    std::vector<int> combo(active.size());
    for (int k = static_cast<int>(active.size()) - 1; k >= 0; --k) {
      combo[k] = rem % radix[k];
      rem /= radix[k];
    }
    std::string key;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k) key += "+";
      key += form.actions(n, active[k])[combo[k]];
    }
    children[key] = tree_to_json(form, form.child(n, combo));
  }
  out["children"] = std::move(children);
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ScenarioError("syntax", e.what(), line, col);
  }

  Scenario sc;
  for (const auto& p : need(doc, "players", "document")) sc.players.push_back(p.get<std::string>());
  try {
    sc.form = ExtensiveForm::build(sc.players, parse_tree(need(doc, "game", "document"), "game"));
  } catch (const std::invalid_argument& e) {
    fail("validator", std::string("game tree: ") + e.what());
  }
  {
    auto rep = sc.form.validate();
    if (!rep.ok()) fail("validator", "game tree: " + rep.to_string());
  }

  int nz = static_cast<int>(sc.form.terminals().size());
  if (auto it = doc.find("structures"); it != doc.end()) {
    for (auto s = it->begin(); s != it->end(); ++s) {
      const std::string where = "structures/" + s.key();
      std::vector<std::string> nature;
      for (const auto& x : need(s.value(), "nature_states", where)) nature.push_back(x.get<std::string>());
      std::vector<std::vector<std::string>> types(sc.players.size());
      const auto& pt = need(s.value(), "payoff_types", where);
      for (std::size_t i = 0; i < sc.players.size(); ++i) {
        auto f = pt.find(sc.players[i]);
        if (f == pt.end()) fail("schema", "payoff types missing for " + sc.players[i] + " in " + where);
        for (const auto& x : *f) types[i].push_back(x.get<std::string>());
      }
      StandardPayoffStructure st(static_cast<int>(sc.players.size()), nz, nature, types);
      std::vector<bool> seen(st.num_states(), false);
      for (const auto& entry : need(s.value(), "utilities", where)) {
        const auto& stv = need(entry, "state", where);
        PayoffState ps;
        ps.nature = st.nature_index(need(stv, "nature", where).get<std::string>());
        ps.types.assign(sc.players.size(), 0);
        const auto& tv = need(stv, "types", where);
        for (std::size_t i = 0; i < sc.players.size(); ++i)
          ps.types[i] = st.type_index(static_cast<PlayerId>(i),
                                      need(tv, sc.players[i], where).get<std::string>());
        int flat = st.flatten(ps);
        if (seen[flat]) fail("validator", "duplicate state entry in " + where);
        seen[flat] = true;
        const auto& pay = need(entry, "payoffs", where);
        for (std::size_t i = 0; i < sc.players.size(); ++i) {
          const auto& row = need(pay, sc.players[i], where);
          if (static_cast<int>(row.size()) != nz)
            fail("schema", "payoff row needs one entry per terminal in " + where);
          for (int z = 0; z < nz; ++z)
            st.set_utility(static_cast<PlayerId>(i), z, flat, parse_rat_field(row[z], where));
        }
      }
      for (bool b : seen)
        if (!b) fail("validator", "utilities not total on the state space in " + where);
      auto rep = st.validate(sc.form);
      if (!rep.ok()) fail("validator", where + ": " + rep.to_string());
      sc.structures.emplace(s.key(), std::move(st));
    }
  }

  if (auto it = doc.find("hierarchies"); it != doc.end()) {
    // Resolve with repeated passes so references in any order work.
    std::vector<std::pair<std::string, json>> pending;
    for (auto h = it->begin(); h != it->end(); ++h) pending.push_back({h.key(), h.value()});
    std::size_t guard = pending.size() * pending.size() + 1;
    while (!pending.empty() && guard--) {
      bool progress = false;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        const auto& [name, spec] = pending[k];
        const std::string where = "hierarchies/" + name;
        PlayerId owner = -1;
        try {
          owner = sc.form.player_index(need(spec, "owner", where).get<std::string>());
        } catch (const std::invalid_argument& e) {
          fail("unresolved-reference", std::string(e.what()) + " in " + where);
        }
        std::string lvl = need(spec, "level1", where).get<std::string>();
        auto sit = sc.structures.find(lvl);
        if (sit == sc.structures.end())
          fail("unresolved-reference", "unknown structure '" + lvl + "' in " + where);
        std::map<PlayerId, StructurePtr> asc;
        bool ready = true;
        if (auto av = spec.find("ascribes"); av != spec.end()) {
          for (auto a = av->begin(); a != av->end(); ++a) {
            PlayerId j = sc.form.player_index(a.key());
            auto ref = a.value().get<std::string>();
            auto hit = sc.hierarchies.find(ref);
            if (hit == sc.hierarchies.end()) {
              bool later = false;
              for (const auto& [nm, js] : pending)
                if (nm == ref) later = true;
              if (!later)
                fail("unresolved-reference", "unknown hierarchy '" + ref + "' in " + where);
              ready = false;
              break;
            }
            asc[j] = hit->second;
          }
        }
        if (!ready) continue;
        sc.hierarchies.emplace(name, SubjectiveStructure::make(owner, sit->second, std::move(asc)));
        pending.erase(pending.begin() + k);
        progress = true;
        break;
      }
      if (!progress) fail("unresolved-reference", "circular hierarchy references");
    }
    for (const auto& [name, node] : sc.hierarchies) {
      auto rep = validate_hierarchy(sc.form, node);
      if (!rep.ok()) fail("validator", "hierarchies/" + name + ": " + rep.to_string());
    }
  }

  if (auto it = doc.find("type_structures"); it != doc.end()) {
    for (auto t = it->begin(); t != it->end(); ++t) {
      const std::string where = "type_structures/" + t.key();
      TypeStructure ts(static_cast<int>(sc.players.size()));
      for (std::size_t i = 0; i < sc.players.size(); ++i) {
        auto pv = t.value().find(sc.players[i]);
        if (pv == t.value().end()) continue;
        for (const auto& def : *pv) {
          TypeDef d;
          d.label = need(def, "label", where).get<std::string>();
          d.payoff_type = need(def, "payoff_type", where).get<std::string>();
          for (const auto& atom : need(def, "belief", where)) {
            TypeBeliefAtom a;
            a.nature = need(atom, "nature", where).get<std::string>();
            const auto& tv = need(atom, "types", where);
            for (std::size_t j = 0; j < sc.players.size(); ++j) {
              if (j == i) continue;
              a.opponent_types.push_back(need(tv, sc.players[j], where).get<std::string>());
            }
            a.prob = parse_rat_field(need(atom, "prob", where), where);
            d.belief.push_back(std::move(a));
          }
          try {
            ts.add_type(static_cast<PlayerId>(i), std::move(d));
          } catch (const std::invalid_argument& e) {
            fail("validator", where + ": " + e.what());
          }
        }
      }
      auto rep = ts.validate();
      if (!rep.ok()) fail("validator", where + ": " + rep.to_string());
      sc.type_structures.emplace(t.key(), std::make_shared<const TypeStructure>(std::move(ts)));
    }
  }

  if (auto it = doc.find("models"); it != doc.end()) {
    for (auto m = it->begin(); m != it->end(); ++m) {
      const std::string where = "models/" + m.key();
      ModelProfile profile;
      for (std::size_t i = 0; i < sc.players.size(); ++i) {
        auto pv = m.value().find(sc.players[i]);
        if (pv == m.value().end()) fail("schema", "model missing player " + sc.players[i] + " in " + where);
        std::string h = need(*pv, "hierarchy", where).get<std::string>();
        std::string t = need(*pv, "types", where).get<std::string>();
        std::string r = need(*pv, "root", where).get<std::string>();
        auto hit = sc.hierarchies.find(h);
        if (hit == sc.hierarchies.end())
          fail("unresolved-reference", "unknown hierarchy '" + h + "' in " + where);
        auto tit = sc.type_structures.find(t);
        if (tit == sc.type_structures.end())
          fail("unresolved-reference", "unknown type structure '" + t + "' in " + where);
        if (hit->second->owner() != static_cast<PlayerId>(i))
          fail("validator", "hierarchy '" + h + "' is not owned by " + sc.players[i]);
        if (tit->second->type_index(static_cast<PlayerId>(i), r) < 0)
          fail("unresolved-reference", "unknown root type '" + r + "' in " + where);
        profile.push_back({hit->second, tit->second, r});
      }
      for (std::size_t i = 0; i < sc.players.size(); ++i)
        if (!type_consistency(profile[i].structure, *profile[i].types, profile[i].root_type))
          fail("validator", "root type inconsistent with its hierarchy in " + where);
      sc.models.emplace(m.key(), std::move(profile));
    }
  }

  if (auto it = doc.find("commands"); it != doc.end()) {
    // Name references must resolve, accounting for artifacts earlier perturb
    // commands register.
    std::set<std::string> known_structures, known_hierarchies, known_models;
    for (const auto& [n, v] : sc.structures) known_structures.insert(n);
    for (const auto& [n, v] : sc.hierarchies) known_hierarchies.insert(n);
    for (const auto& [n, v] : sc.models) known_models.insert(n);
    auto check_ref = [&](const std::set<std::string>& pool, const json& name,
                         const std::string& what) {
      if (!pool.count(name.get<std::string>()))
        fail("unresolved-reference",
             "unknown " + what + " '" + name.get<std::string>() + "' in commands");
    };
    for (const auto& c : *it) {
      if (!c.is_object() || c.size() != 1)
        fail("schema", "each command must be a single-key object");
      const std::string kind = c.begin().key();
      const json& body = c.begin().value();
      if (kind == "solve" || kind == "compare") {
        check_ref(known_models, need(body, "model", kind), "model");
      } else if (kind == "distance") {
        if (body.contains("structures"))
          for (const auto& n : body["structures"]) check_ref(known_structures, n, "structure");
        else if (body.contains("models"))
          for (const auto& n : body["models"]) check_ref(known_models, n, "model");
        else
          fail("schema", "distance needs 'structures' or 'models'");
      } else if (kind == "check") {
        if (body.contains("richness")) check_ref(known_structures, body["richness"], "structure");
        if (body.contains("hierarchy")) check_ref(known_hierarchies, body["hierarchy"], "hierarchy");
        if (body.contains("cps")) check_ref(known_models, need(body["cps"], "model", "check"), "model");
      } else if (kind == "perturb") {
        std::string pk = need(body, "kind", "perturb").get<std::string>();
        std::string as = need(body, "as", "perturb").get<std::string>();
        if (pk == "tie_break" || pk == "dominance_extension") {
          check_ref(known_structures, need(body, "structure", pk), "structure");
          known_structures.insert(as);
        } else if (pk == "default_rich") {
          known_structures.insert(as);
        } else if (pk == "richness_graft") {
          check_ref(known_structures, need(body, "base", pk), "structure");
          check_ref(known_structures, need(body, "rich", pk), "structure");
          known_hierarchies.insert(as);
        } else if (pk == "graft_models") {
          check_ref(known_models, need(body, "model", pk), "model");
          check_ref(known_structures, need(body, "rich", pk), "structure");
          known_models.insert(as);
        } else if (pk == "tie_break_models") {
          check_ref(known_models, need(body, "model", pk), "model");
          known_models.insert(as);
        } else {
          fail("schema", "unknown perturbation kind '" + pk + "'");
        }
      } else {
        fail("schema", "unknown command '" + kind + "'");
      }
      sc.commands.push_back({kind, body.dump()});
    }
  }
  return sc;
}

namespace {

json structure_to_json(const std::vector<std::string>& players,
                       const StandardPayoffStructure& st) {
  json out;
  out["nature_states"] = st.nature_states();
  json pt = json::object();
  for (std::size_t i = 0; i < players.size(); ++i) pt[players[i]] = st.payoff_types(static_cast<PlayerId>(i));
  out["payoff_types"] = std::move(pt);
  json utils = json::array();
  for (int flat = 0; flat < st.num_states(); ++flat) {
    PayoffState ps = st.unflatten(flat);
    json entry;
    json stv;
    stv["nature"] = st.nature_states()[ps.nature];
    json tv = json::object();
    for (std::size_t i = 0; i < players.size(); ++i)
      tv[players[i]] = st.payoff_types(static_cast<PlayerId>(i))[ps.types[i]];
    stv["types"] = std::move(tv);
    entry["state"] = std::move(stv);
    json pay = json::object();
    for (std::size_t i = 0; i < players.size(); ++i) {
      json row = json::array();
      for (int z = 0; z < st.num_terminals(); ++z)
        row.push_back(rat_to_string(st.utility(static_cast<PlayerId>(i), z, flat)));
      pay[players[i]] = std::move(row);
    }
    entry["payoffs"] = std::move(pay);
    utils.push_back(std::move(entry));
  }
  out["utilities"] = std::move(utils);
  return out;
}

}  // namespace

std::string serialize_scenario(const Scenario& sc) {
  json doc;
  doc["players"] = sc.players;
  doc["game"] = tree_to_json(sc.form, sc.form.root());
  json structures = json::object();
  for (const auto& [name, st] : sc.structures) structures[name] = structure_to_json(sc.players, st);

  // Hierarchies serialize against named structures; anonymous level-1 content
  // gets an auxiliary name.
  json hier = json::object();
  std::map<std::string, std::string> struct_names;  // content key -> name
  for (const auto& [name, st] : sc.structures) struct_names[st.content_key()] = name;
  std::map<std::string, std::string> node_names;  // node key -> hierarchy name
  int anon = 0;
  std::function<std::string(const StructurePtr&)> emit = [&](const StructurePtr& node) {
    if (auto it = node_names.find(node->key()); it != node_names.end()) return it->second;
    std::string name;
    for (const auto& [nm, ptr] : sc.hierarchies)
      if (ptr->key() == node->key()) name = nm;
    if (name.empty()) name = "_h" + std::to_string(anon++);
    node_names[node->key()] = name;
    json spec;
    spec["owner"] = sc.players[node->owner()];
    auto ck = node->level1().content_key();
    auto sit = struct_names.find(ck);
    std::string sname;
    if (sit != struct_names.end()) {
      sname = sit->second;
    } else {
      sname = "_s" + std::to_string(struct_names.size());
      struct_names[ck] = sname;
      structures[sname] = structure_to_json(sc.players, node->level1());
    }
    spec["level1"] = sname;
    if (!node->is_ck_tail()) {
      json asc = json::object();
      for (PlayerId j = 0; j < static_cast<PlayerId>(sc.players.size()); ++j) {
        if (j == node->owner()) continue;
        asc[sc.players[j]] = emit(node->ascription(j));
      }
      spec["ascribes"] = std::move(asc);
    } else {
      spec["ck"] = true;
    }
    hier[name] = std::move(spec);
    return name;
  };
  for (const auto& [name, node] : sc.hierarchies) emit(node);
  doc["hierarchies"] = std::move(hier);

  json tss = json::object();
  for (const auto& [name, ts] : sc.type_structures) {
    json entry = json::object();
    for (std::size_t i = 0; i < sc.players.size(); ++i) {
      json defs = json::array();
      for (const auto& d : ts->types(static_cast<PlayerId>(i))) {
        json dv;
        dv["label"] = d.label;
        dv["payoff_type"] = d.payoff_type;
        json belief = json::array();
        for (const auto& a : d.belief) {
          json av;
          av["nature"] = a.nature;
          json tv = json::object();
          int slot = 0;
          for (std::size_t j = 0; j < sc.players.size(); ++j) {
            if (j == i) continue;
            tv[sc.players[j]] = a.opponent_types[slot++];
          }
          av["types"] = std::move(tv);
          av["prob"] = rat_to_string(a.prob);
          belief.push_back(std::move(av));
        }
        dv["belief"] = std::move(belief);
        defs.push_back(std::move(dv));
      }
      if (!defs.empty()) entry[sc.players[i]] = std::move(defs);
    }
    tss[name] = std::move(entry);
  }
  doc["type_structures"] = std::move(tss);

  json models = json::object();
  for (const auto& [name, profile] : sc.models) {
    json mv = json::object();
    for (std::size_t i = 0; i < sc.players.size(); ++i) {
      json pv;
      pv["hierarchy"] = node_names.at(profile[i].structure->key());
      std::string tname;
      for (const auto& [nm, ts] : sc.type_structures)
        if (ts.get() == profile[i].types.get()) tname = nm;
      pv["types"] = tname;
      pv["root"] = profile[i].root_type;
      mv[sc.players[i]] = std::move(pv);
    }
    models[name] = std::move(mv);
  }
  doc["models"] = std::move(models);

  // Structures last: the hierarchy walk may have added anonymous levels.
  doc["structures"] = std::move(structures);

  json cmds = json::array();
  for (const auto& c : sc.commands) {
    json cv = json::object();
    cv[c.kind] = json::parse(c.payload);
    cmds.push_back(std::move(cv));
  }
  doc["commands"] = std::move(cmds);
  return doc.dump(2) + "\n";
}

namespace {

struct ReportBuilder {
  std::ostringstream human;
  std::ostringstream csv;
  bool budget_hit = false;

  void solver_rows(const ExtensiveForm& form, const std::string& model_name,
                   const SolutionTrace& tr) {
    const auto& players = form.players();
    human << "  concept " << concept_name(tr.kind) << (tr.budget_exceeded ? " [budget exceeded]" : "")
          << "\n";
    for (std::size_t round = 0; round < tr.rounds.size(); ++round) {
      for (PlayerId i = 0; i < form.num_players(); ++i) {
        const auto& key = tr.roots[i];
        const auto& set = tr.rounds[round].at(key);
        std::string strategies;
        for (StrategyIdx s : set) {
          if (!strategies.empty()) strategies += "|";
          strategies += form.strategy_name(i, s);
        }
        human << "    round " << round << "  " << players[i] << "  {" << strategies << "}\n";
        std::string outcomes;
        if (round + 1 == tr.rounds.size()) {
          for (NodeId z : trace_outcomes(form, tr)) {
            if (!outcomes.empty()) outcomes += "|";
            outcomes += form.node_label(z);
          }
        }
        csv << concept_name(tr.kind) << "," << round << "," << players[i] << ","
            << model_name << ":" << tr.roots[i].type_index << "," << strategies << "," << outcomes
            << "\n";
      }
    }
    std::string outcomes;
    for (NodeId z : trace_outcomes(form, tr)) {
      if (!outcomes.empty()) outcomes += "|";
      outcomes += form.node_label(z);
    }
    human << "    outcomes {" << outcomes << "}\n";
    if (tr.budget_exceeded) budget_hit = true;
  }
};

SolutionConcept concept_of(const std::string& name) {
  if (name == "efr") return SolutionConcept::kEfr;
  if (name == "br") return SolutionConcept::kBackward;
  if (name == "sefr") return SolutionConcept::kStrictEfr;
  if (name == "icr") return SolutionConcept::kIcr;
  throw ScenarioError("schema", "unknown concept '" + name + "'");
}

}  // namespace

RunResult run_scenario(Scenario& sc, const RunOptions& opts) {
  using nlohmann::json;
  ReportBuilder rb;
  rb.csv << "concept,round,player,type,strategies,outcomes\n";

  auto get_model = [&](const std::string& name) -> ModelProfile& {
    auto it = sc.models.find(name);
    if (it == sc.models.end())
      throw ScenarioError("unresolved-reference", "unknown model '" + name + "'");
    return it->second;
  };
  auto get_structure = [&](const std::string& name) -> StandardPayoffStructure& {
    auto it = sc.structures.find(name);
    if (it == sc.structures.end())
      throw ScenarioError("unresolved-reference", "unknown structure '" + name + "'");
    return it->second;
  };

  SolverOptions sopts;
  sopts.threads = opts.threads;
  sopts.max_rounds = opts.max_rounds;

  int cmd_no = 0;
  for (const auto& cmd : sc.commands) {
    json payload = json::parse(cmd.payload);
    ++cmd_no;
    rb.human << "[" << cmd_no << "] " << cmd.kind << " " << cmd.payload << "\n";
    if (cmd.kind == "solve" || cmd.kind == "compare") {
      std::string mname = payload.at("model").get<std::string>();
      auto& model = get_model(mname);
      std::vector<std::string> concepts;
      if (cmd.kind == "solve") {
        concepts.push_back(opts.concept_filter.empty()
                               ? payload.value("concept", std::string("efr"))
                               : opts.concept_filter);
      } else {
        for (const auto& c : payload.at("concepts")) concepts.push_back(c.get<std::string>());
      }
      SolverOptions local = sopts;
      if (payload.contains("max_rounds") && local.max_rounds == 0)
        local.max_rounds = payload["max_rounds"].get<int>();
      for (const auto& cname : concepts) {
        auto tr = solve(sc.form, model, concept_of(cname), local);
        rb.solver_rows(sc.form, mname, tr);
      }
    } else if (cmd.kind == "distance") {
      if (payload.contains("structures")) {
        auto names = payload["structures"];
        auto a = canonicalize(get_structure(names.at(0).get<std::string>()));
        auto b = canonicalize(get_structure(names.at(1).get<std::string>()));
        rb.human << "  hausdorff distance = " << rat_to_string(hausdorff_distance(a, b)) << "\n";
      } else {
        auto names = payload.at("models");
        auto& a = get_model(names.at(0).get<std::string>());
        auto& b = get_model(names.at(1).get<std::string>());
        rb.human << "  model distance = " << rat_to_string(model_distance(a, b)) << "\n";
      }
    } else if (cmd.kind == "check") {
      if (payload.contains("richness")) {
        const auto& st = get_structure(payload["richness"].get<std::string>());
        auto res = is_rich(sc.form, st);
        rb.human << "  rich = " << (res.rich ? "yes" : "no") << "\n";
      }
      if (payload.contains("hierarchy")) {
        std::string name = payload["hierarchy"].get<std::string>();
        auto it = sc.hierarchies.find(name);
        if (it == sc.hierarchies.end())
          throw ScenarioError("unresolved-reference", "unknown hierarchy '" + name + "'");
        bool lint = payload.value("unawareness_lint", false);
        auto rep = validate_hierarchy(sc.form, it->second, lint);
        rb.human << "  hierarchy " << name << ": " << (rep.ok() ? "ok" : rep.to_string()) << "\n";
        if (auto ord = higher_order_richness(sc.form, it->second))
          rb.human << "  richness order = " << *ord << "\n";
        else
          rb.human << "  richness order = none\n";
      }
      if (payload.contains("cps")) {
        const auto& spec = payload["cps"];
        auto& model = get_model(spec.at("model").get<std::string>());
        PlayerId owner = sc.form.player_index(spec.at("player").get<std::string>());
        BeliefUniverse u(sc.form, model[owner]);
        Cps cps;
        cps.beliefs.assign(u.conditioning().size(), std::vector<Rat>(u.num_atoms(), Rat(0)));
        for (auto bit = spec.at("beliefs").begin(); bit != spec.at("beliefs").end(); ++bit) {
          int pos = -1;
          for (std::size_t p = 0; p < u.conditioning().size(); ++p)
            if (sc.form.node_label(u.conditioning()[p]) == bit.key()) pos = static_cast<int>(p);
          if (pos < 0)
            throw ScenarioError("validator", "'" + bit.key() + "' is not a conditioning history");
          for (const auto& atom : bit.value()) {
            int nature = model[owner].structure->level1().nature_index(
                atom.at("nature").get<std::string>());
            std::vector<StrategyIdx> strat;
            std::vector<int> types;
            const auto& sv = atom.at("strategies");
            const auto& tv = atom.at("types");
            for (PlayerId j : u.opponents()) {
              strat.push_back(
                  sc.form.strategy_by_name(j, sv.at(sc.players[j]).get<std::string>()));
              types.push_back(
                  model[owner].types->require_type(j, tv.at(sc.players[j]).get<std::string>()));
            }
            int found = -1;
            for (int k = 0; k < u.num_atoms(); ++k)
              if (u.atom(k).nature == nature && u.atom(k).strategies == strat &&
                  u.atom(k).types == types)
                found = k;
            if (found < 0) throw ScenarioError("validator", "cps atom outside the universe");
            cps.beliefs[pos][found] += parse_rat_field(atom.at("prob"), "cps");
          }
        }
        auto rep = validate_cps(u, cps);
        rb.human << "  cps: " << (rep.ok() ? "ok" : rep.to_string()) << "\n";
        if (rep.ok()) {
          rb.human << "  best responses:";
          for (StrategyIdx s2 : best_responses(u, cps))
            rb.human << " " << sc.form.strategy_name(owner, s2);
          rb.human << "\n  scratch histories:";
          for (NodeId h : scratch_histories(u, cps))
            rb.human << " " << sc.form.node_label(h);
          rb.human << "\n";
        }
      }
    } else if (cmd.kind == "perturb") {
      std::string kind = payload.at("kind").get<std::string>();
      std::string as = payload.at("as").get<std::string>();
      if (kind == "tie_break" || kind == "dominance_extension") {
        const auto& base = get_structure(payload.at("structure").get<std::string>());
        int n = payload.at("n").get<int>();
        auto out = kind == "tie_break" ? tie_break(sc.form, base, n)
                                       : dominance_extension(sc.form, base, n);
        sc.structures.emplace(as, std::move(out));
        rb.human << "  structure '" << as << "' registered\n";
      } else if (kind == "default_rich") {
        sc.structures.emplace(as, default_rich_structure(sc.form));
        rb.human << "  structure '" << as << "' registered\n";
      } else if (kind == "richness_graft") {
        PlayerId owner = sc.form.player_index(payload.at("owner").get<std::string>());
        const auto& base = get_structure(payload.at("base").get<std::string>());
        const auto& rich = get_structure(payload.at("rich").get<std::string>());
        int k = payload.at("k").get<int>();
        sc.hierarchies.emplace(as, richness_graft(owner, base, rich, k));
        rb.human << "  hierarchy '" << as << "' registered\n";
      } else if (kind == "graft_models" || kind == "tie_break_models") {
        auto& base = get_model(payload.at("model").get<std::string>());
        ModelProfile out;
        if (kind == "graft_models") {
          const auto& rich = get_structure(payload.at("rich").get<std::string>());
          out = graft_models(sc.form, base, rich, payload.at("k").get<int>());
        } else {
          out = tie_break_models(sc.form, base, payload.at("n").get<int>());
        }
        for (const auto& m : out)
          if (!type_consistency(m.structure, *m.types, m.root_type))
            throw ScenarioError("validator", "perturbed model '" + as + "' became inconsistent");
        sc.models.emplace(as, std::move(out));
        rb.human << "  model '" << as << "' registered\n";
      } else {
        throw ScenarioError("schema", "unknown perturbation kind '" + kind + "'");
      }
    }
  }

  RunResult out;
  out.report = rb.human.str() + "=== csv ===\n" + rb.csv.str();
  out.exit_code = rb.budget_hit ? 3 : 0;
  return out;
}

}  // namespace rationalizer
