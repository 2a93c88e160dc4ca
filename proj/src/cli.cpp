#include "staudtlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "staudtlab/errors.hpp"
#include "staudtlab/expr.hpp"
#include "staudtlab/finite_ring.hpp"
#include "staudtlab/jordan.hpp"
#include "staudtlab/projline.hpp"
#include "staudtlab/ring.hpp"
#include "staudtlab/staudt.hpp"
#include "staudtlab/synth.hpp"

namespace staudt::cli {

namespace {

Error usage(const std::string& what) { return Error(ErrorKind::InvalidParameter, what); }

std::string big(const BigInt& v) { return v.str(); }

RingSpec require_spec(const Command& cmd) {
  if (cmd.spec.empty()) throw usage(cmd.verb + " needs --spec");
  return parse_ring_spec(cmd.spec);
}

double budget_of(const Command& cmd) { return cmd.budget.value_or(default_budget()); }

SampleOptions sample_options(const Command& cmd) { return SampleOptions{cmd.trials, cmd.seed}; }

Json verdict_json(const Verdict& v) {
  Json j;
  j["ok"] = v.ok;
  j["mode"] = std::string(to_string(v.mode));
  j["trials"] = v.trials;
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

// ---- ring-info, eval ----

Report ring_info(const Command& cmd, const RingSpec& spec) {
  Report r;
  const Cardinality c = cardinality(spec);
  r.body["finite"] = !c.infinite;
  r.body["size"] = c.infinite ? std::string("infinite") : big(c.value);
  r.body["characteristic"] = big(characteristic(spec));
  r.body["commutative"] = is_commutative(spec);
  r.body["division_ring"] = is_division_ring(spec);
  r.body["two_is_unit"] = two_is_unit(spec);
  if (!c.infinite && c.value <= FiniteRing::kTableLimit * 16) {
    const auto ring = FiniteRing::make(spec);
    r.body["units"] = ring->units().size();
    r.body["centre"] = ring->centre().size();
  }
  (void)cmd;
  return r;
}

Report eval(const Command& cmd, const RingSpec& spec) {
  if (cmd.expr.empty()) throw usage("eval needs --expr");
  Report r;
  const auto ring = Ring::make(spec);
  r.body["expr"] = cmd.expr;
  r.body["value"] = ring->render(ring->parse(cmd.expr));
  return r;
}

// ---- harmonic, crossratio, components ----

template <class Line>
Report harmonic_on(const Command& cmd, const Line& line) {
  const auto tokens = split_top_level(cmd.triple);
  if (tokens.size() != 3) throw usage("--triple needs three comma-separated scalars");
  using Arg = typename Line::Arg;
  std::vector<Arg> args;
  for (const auto& t : tokens) {
    const auto first = t.find_first_not_of(' ');
    const auto last = t.find_last_not_of(' ');
    const std::string word = first == std::string::npos ? "" : t.substr(first, last - first + 1);
    if (word == "inf") {
      args.push_back(std::nullopt);
    } else {
      args.push_back(line.ring().parse(word));
    }
  }
  const auto p4 = line.fourth_harmonic(args[0], args[1], args[2]);
  const auto x4 = line.try_affine(p4);
  Report r;
  r.body["triple"] = cmd.triple;
  r.body["fourth"] = x4 ? line.ring().render(*x4) : std::string("inf");
  r.body["point"] = line.render(p4);
  bool verified;
  if (args[0] && args[1] && args[2] && x4) {
    verified = line.wachs_harmonic(*args[0], *args[1], *args[2], *x4);
    r.body["wachs"] = verified;
  } else {
    const auto pt = [&](const Arg& a) { return a ? line.embed(*a) : line.infinity(); };
    verified = line.is_harmonic(pt(args[0]), pt(args[1]), pt(args[2]), p4);
    r.body["cross_ratio_check"] = verified;
  }
  r.exit_code = verified ? 0 : 1;
  return r;
}

template <class Line>
Report crossratio_on(const Command& cmd, const Line& line) {
  const auto tokens = split_top_level(cmd.points);
  if (tokens.size() != 4) throw usage("--points needs four comma-separated points");
  std::vector<typename Line::Point> p;
  for (const auto& t : tokens) p.push_back(line.parse_point(t));
  const auto cr = line.cross_ratio(p[0], p[1], p[2], p[3]);
  Report r;
  r.body["points"] = Json::array();
  for (const auto& x : p) r.body["points"].push_back(line.render(x));
  r.body["cross_ratio"] = line.ring().render(cr.representative);
  r.body["mode"] = std::string(to_string(cr.mode));
  r.body["harmonic"] = cr == line.class_of(line.ring().neg(line.ring().one()));
  return r;
}

Report components(const Command& cmd, const RingSpec& spec) {
  const FiniteLine line(FiniteRing::make(spec));
  const auto comps = line.components();
  Report r;
  r.body["points"] = line.points().size();
  r.body["count"] = comps.size();
  r.body["sizes"] = Json::array();
  for (const auto& c : comps) r.body["sizes"].push_back(c.size());
  if (line.points().size() <= 512) {
    r.body["components"] = Json::array();
    for (const auto& c : comps) {
      Json list = Json::array();
      for (std::size_t id : c) list.push_back(line.render(line.points()[id]));
      r.body["components"].push_back(std::move(list));
    }
  }
  if (cmd.format == "csv") {
    std::string csv = "component,point\n";
    for (std::size_t k = 0; k < comps.size(); ++k) {
      for (std::size_t id : comps[k]) csv += std::to_string(k) + ",\"" + line.render(line.points()[id]) + "\"\n";
    }
    r.csv = std::move(csv);
  }
  return r;
}

// ---- jordan-check, classify, jordan-enum ----

AdditiveMap require_map(const Command& cmd, const RingSpec& spec) {
  if (cmd.map.empty()) throw usage(cmd.verb + " needs --map");
  return parse_map(cmd.map, spec);
}

Report jordan_check(const Command& cmd, const RingSpec& spec) {
  const AdditiveMap f = require_map(cmd, spec);
  const AxiomSet axioms = parse_axiom_set(cmd.axioms.empty() ? "ancochea" : cmd.axioms);
  const Verdict v = check_axioms(f, axioms, sample_options(cmd));
  Report r;
  r.body["map"] = render_map(f);
  r.body["axioms"] = std::string(to_string(axioms));
  r.body["ok"] = v.ok;
  r.body["class"] = std::string(to_string(classify_map(f, sample_options(cmd))));
  r.body["verdict"] = verdict_json(v);
  r.exit_code = v.ok ? 0 : 1;
  return r;
}

Report classify_verb(const Command& cmd, const RingSpec& spec) {
  const AdditiveMap f = require_map(cmd, spec);
  bool sampled = false;
  const MapClass c = classify_map(f, sample_options(cmd), &sampled);
  Report r;
  r.body["map"] = render_map(f);
  r.body["class"] = std::string(to_string(c));
  r.body["mode"] = sampled ? "sampled" : "exhaustive";
  return r;
}

Report jordan_enum(const Command& cmd, const RingSpec& spec) {
  const auto ring = FiniteRing::make(spec);
  EnumerationOptions opts;
  opts.axioms = parse_axiom_set(cmd.axioms.empty() ? "jordan" : cmd.axioms);
  opts.budget = budget_of(cmd);
  const EnumerationResult e = enumerate_jordan_automorphisms(*ring, opts);
  Report r;
  r.body["axioms"] = std::string(to_string(e.axioms));
  r.body["candidates"] = e.candidates;
  r.body["nodes"] = e.nodes;
  r.body["count"] = e.found.size();
  std::map<std::string, std::size_t> tally;
  for (MapClass c : e.classes) ++tally[std::string(to_string(c))];
  r.body["classes"] = Json::object();
  for (const char* name : {"hom", "anti", "both", "neither"}) r.body["classes"][name] = tally[name];
  const bool sum = spec.kind == RingKind::Sum;
  r.body["maps"] = Json::array();
  std::string csv = "index,class,images\n";
  for (std::size_t i = 0; i < e.found.size(); ++i) {
    Json m;
    m["class"] = std::string(to_string(e.classes[i]));
    m["table"] = Json::parse(render_map(table_map(*ring, *ring, e.found[i].images)));
    if (sum) {
      const Pairing p = kaplansky_pairing(e.found[i]);
      m["pairing"] = p.image_parts;
      m["pairing_ok"] = p.ok;
    }
    r.body["maps"].push_back(std::move(m));
    csv += std::to_string(i) + "," + std::string(to_string(e.classes[i])) + ",\"";
    for (std::size_t x = 0; x < e.found[i].images.size(); ++x) {
      if (x) csv += ' ';
      csv += ring->render(e.found[i].images[x]);
    }
    csv += "\"\n";
  }
  if (cmd.format == "csv") r.csv = std::move(csv);
  return r;
}

// ---- preservers, extend ----

Report preservers(const Command& cmd, const RingSpec& spec) {
  const auto line = std::make_shared<const FiniteLine>(FiniteRing::make(spec));
  const PreserverEnumeration e = enumerate_preservers_fixing_frame(line, budget_of(cmd));
  Report r;
  r.body["count"] = e.maps.size();
  r.body["nodes"] = e.nodes;
  r.body["maps"] = Json::array();
  bool all_semi = true;
  for (const FiniteLineMap& m : e.maps) {
    const AdditiveMap f = induced_scalar_map(m);
    const MapClass c = classify_map(f);
    all_semi = all_semi && c != MapClass::Neither;
    Json j;
    j["scalar_map"] = f.form == MapForm::Table ? Json::parse(render_map(f)) : Json(render_map(f));
    j["class"] = std::string(to_string(c));
    r.body["maps"].push_back(std::move(j));
  }
  r.body["all_hom_or_anti"] = all_semi;
  r.exit_code = all_semi ? 0 : 1;
  return r;
}

Report extend(const Command& cmd, const RingSpec& spec) {
  const AdditiveMap f = require_map(cmd, spec);
  Report r;
  r.body["map"] = render_map(f);
  const NaiveExtension naive = naive_extension(f);
  Json nj;
  nj["consistent"] = naive.map.has_value();
  if (naive.witness) {
    nj["witness"] = {{"pair", naive.witness->pair},
                     {"unit", naive.witness->unit},
                     {"image", naive.witness->image},
                     {"scaled_image", naive.witness->scaled_image}};
  }
  r.body["naive"] = std::move(nj);
  const BartoloneExtension b = bartolone_extension(f, cmd.component);
  Json bj;
  bj["component"] = b.component;
  bj["states"] = b.states;
  bj["points"] = b.map.defined_count();
  bj["bijective"] = b.bijective;
  bj["harmonic"] = verdict_json(b.harmonic);
  r.body["bartolone"] = std::move(bj);
  if (naive.map) r.body["agree"] = naive.map->image == b.map.image;
  r.exit_code = b.bijective && b.harmonic.ok ? 0 : 1;
  return r;
}

// ---- synth-verify ----

Report synth_verify(const Command& cmd, const RingSpec& spec) {
  if (spec.kind != RingKind::GF) throw usage("synth-verify needs --spec GF(q)");
  std::int64_t q = 1;
  for (int i = 0; i < spec.k; ++i) q *= spec.n;
  const ProjectiveSpace s(cmd.dim, q);
  const FiniteRing& F = s.field();
  Report r;
  bool ok = true;
  r.body["space"] = "PG(" + std::to_string(cmd.dim) + "," + std::to_string(q) + ")";

  const AxiomReport ax = axiom_battery(s);
  r.body["axioms"] = {{"ok", ax.ok()}, {"checks", ax.checks}};
  ok = ok && ax.ok();

  const DesarguesReport d = desargues_check(s, cmd.trials, cmd.seed);
  r.body["desargues"] = {{"ok", d.ok},
                         {"mode", d.exhaustive ? "exhaustive" : "sampled"},
                         {"configurations", d.configurations},
                         {"rejected", d.rejected}};
  if (!d.witness.empty()) r.body["desargues"]["witness"] = d.witness;
  ok = ok && d.ok;

  // Field operations and the quadrangle against coordinates, every aux
  // choice for q <= 5 and the first few otherwise.
  const PointId zero = s.chart_point(0), one = s.chart_point(F.one()), inf = s.chart_infinity();
  auto add_aux = add_aux_choices(s, zero, inf);
  auto mul_aux = mul_aux_choices(s, zero, inf);
  if (q > 5) {
    add_aux.resize(std::min<std::size_t>(add_aux.size(), 3));
    mul_aux.resize(std::min<std::size_t>(mul_aux.size(), 3));
  }
  bool tables = true;
  for (std::uint32_t x = 0; x < F.size() && tables; ++x) {
    for (std::uint32_t y = 0; y < F.size() && tables; ++y) {
      for (const AddAux& a : add_aux) {
        tables = tables && s.chart_coordinate(geometric_add(s, zero, inf, s.chart_point(x), s.chart_point(y), a)) ==
                               F.add(x, y);
      }
      for (const MulAux& a : mul_aux) {
        tables = tables && s.chart_coordinate(geometric_mul(s, zero, one, inf, s.chart_point(x), s.chart_point(y),
                                                            a)) == F.mul(x, y);
      }
    }
  }
  r.body["field_tables"] = {{"ok", tables}, {"add_aux", add_aux.size()}, {"mul_aux", mul_aux.size()}};
  ok = ok && tables;

  const FiniteLine line(FiniteRing::make(spec));
  bool quad = true;
  std::uint64_t triples = 0;
  std::vector<std::optional<std::uint32_t>> affine{std::nullopt};
  for (std::uint32_t x = 0; x < F.size(); ++x) affine.push_back(x);
  const auto to_point = [&](const std::optional<std::uint32_t>& x) { return x ? s.chart_point(*x) : inf; };
  for (const auto& a : affine) {
    for (const auto& b : affine) {
      for (const auto& c : affine) {
        if (a == b || a == c || b == c) continue;
        ++triples;
        const auto p4 = line.fourth_harmonic(a, b, c);
        const auto x4 = line.try_affine(p4);
        const PointId expected = x4 ? s.chart_point(*x4) : inf;
        auto aux = quadrangle_aux_choices(s, to_point(a), to_point(b), to_point(c));
        if (q > 5) aux.resize(std::min<std::size_t>(aux.size(), 3));
        for (const QuadrangleAux& qa : aux) {
          quad = quad && quadrangle_fourth_harmonic(s, to_point(a), to_point(b), to_point(c), qa) == expected;
        }
      }
    }
  }
  r.body["quadrangle"] = {{"ok", quad}, {"triples", triples}};
  ok = ok && quad;

  if ((cmd.dim == 2 && q <= 5) || (cmd.dim == 3 && q <= 4)) {
    const ProjectivityGroup g = projectivity_group(s, s.chart_line(), budget_of(cmd));
    const std::size_t expected = static_cast<std::size_t>(q * (q * q - 1));
    const std::size_t stab = stabilizer(s, g, {zero, one, inf}).size();
    const bool transitive = is_triply_transitive(s, g);
    r.body["group"] = {{"order", g.order()},     {"expected", expected},          {"stabilizer", stab},
                       {"triply_transitive", transitive}, {"states", g.states}};
    ok = ok && g.order() == expected && stab == 1 && transitive;
  }

  if (cmd.dim == 3 && q <= 3) {
    std::mt19937_64 rng(cmd.seed);
    std::size_t found = 0, skew = 0, single = 0, chains = 0;
    while (chains < 100) {
      const auto chain = random_chain(s, 4, rng);
      if (chain.back().target == chain.front().source) continue;
      ++chains;
      const SchurResult sr = schur_decomposition(s, chain);
      found += sr.found;
      skew += sr.skew;
      single += sr.found && sr.factors.size() == 1;
    }
    r.body["schur"] = {{"chains", chains}, {"decomposed", found}, {"skew", skew}, {"single", single}};
    ok = ok && found == chains;
  }
  r.body["ok"] = ok;
  r.exit_code = ok ? 0 : 1;
  return r;
}

}  // namespace

Json to_json(const Command& cmd) {
  const Command def;
  Json j;
  j["verb"] = cmd.verb;
  if (!cmd.spec.empty()) j["spec"] = cmd.spec;
  if (!cmd.map.empty()) j["map"] = cmd.map;
  if (!cmd.axioms.empty()) j["axioms"] = cmd.axioms;
  if (!cmd.expr.empty()) j["expr"] = cmd.expr;
  if (!cmd.triple.empty()) j["triple"] = cmd.triple;
  if (!cmd.points.empty()) j["points"] = cmd.points;
  if (cmd.trials != def.trials) j["trials"] = cmd.trials;
  if (cmd.seed != def.seed) j["seed"] = cmd.seed;
  if (cmd.budget) j["budget"] = *cmd.budget;
  if (cmd.format != def.format) j["format"] = cmd.format;
  if (cmd.dim != def.dim) j["dim"] = cmd.dim;
  if (cmd.component != def.component) j["component"] = cmd.component;
  return j;
}

Report run(const Command& cmd) {
  if (std::find(kVerbs.begin(), kVerbs.end(), cmd.verb) == kVerbs.end()) throw usage("unknown verb " + cmd.verb);
  if (cmd.format != "json" && cmd.format != "csv") throw usage("--format is json or csv");
  if (cmd.format == "csv" && cmd.verb != "jordan-enum" && cmd.verb != "components") {
    throw usage("csv output exists only for jordan-enum and components");
  }
  const RingSpec spec = require_spec(cmd);
  Report r;
  const std::string& v = cmd.verb;
  if (v == "ring-info") {
    r = ring_info(cmd, spec);
  } else if (v == "eval") {
    r = eval(cmd, spec);
  } else if (v == "harmonic") {
    if (cmd.triple.empty()) throw usage("harmonic needs --triple");
    r = is_finite(spec) ? harmonic_on(cmd, FiniteLine(FiniteRing::make(spec)))
                        : harmonic_on(cmd, RationalLine(Ring::make(spec)));
  } else if (v == "crossratio") {
    if (cmd.points.empty()) throw usage("crossratio needs --points");
    r = is_finite(spec) ? crossratio_on(cmd, FiniteLine(FiniteRing::make(spec)))
                        : crossratio_on(cmd, RationalLine(Ring::make(spec)));
  } else if (v == "components") {
    r = components(cmd, spec);
  } else if (v == "jordan-check") {
    r = jordan_check(cmd, spec);
  } else if (v == "classify") {
    r = classify_verb(cmd, spec);
  } else if (v == "jordan-enum") {
    r = jordan_enum(cmd, spec);
  } else if (v == "preservers") {
    r = preservers(cmd, spec);
  } else if (v == "extend") {
    r = extend(cmd, spec);
  } else {
    r = synth_verify(cmd, spec);
  }
  Json body;
  body["command"] = to_json(cmd);
  body["spec"] = render(spec);
  for (auto& [key, value] : r.body.items()) body[key] = value;
  r.body = std::move(body);
  return r;
}

int exit_code_for(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return 2;
  switch (err->kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Semantic:
    case ErrorKind::InvalidParameter:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::Unsupported:
    case ErrorKind::InfiniteRing:
      return 2;
    default:
      return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Command cmd;
  CLI::App app{"Exact verification of harmonicity preservers and Jordan homomorphisms"};
  app.add_option("verb", cmd.verb, "ring-info | eval | harmonic | crossratio | components | jordan-check | "
                                   "jordan-enum | classify | preservers | extend | synth-verify")
      ->required()
      ->check(CLI::IsMember(kVerbs));
  app.add_option("--spec", cmd.spec, "ring spec, e.g. GF(9), M(2,GF(3)), Quat(Q)");
  app.add_option("--map", cmd.map, "additive map, e.g. transpose, inner(a=i), frobenius(1)");
  app.add_option("--axioms", cmd.axioms, "ancochea | jordan | jordan-unital")
      ->check(CLI::IsMember({"ancochea", "jordan", "jordan-unital"}));
  app.add_option("--expr", cmd.expr, "element expression for eval");
  app.add_option("--triple", cmd.triple, "three scalars for harmonic, inf allowed");
  app.add_option("--points", cmd.points, "four points for crossratio");
  app.add_option("--trials", cmd.trials, "samples for sampled checks");
  app.add_option("--seed", cmd.seed, "random seed");
  app.add_option("--budget", cmd.budget, "enumeration budget");
  app.add_option("--format", cmd.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cmd.out, "write the report here instead of stdout");
  app.add_option("--dim", cmd.dim, "ambient dimension for synth-verify (2 or 3)");
  app.add_option("--component", cmd.component, "distant-graph component for extend");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Json body;
  std::optional<std::string> csv;
  int code = 0;
  try {
    Report r = run(cmd);
    body = std::move(r.body);
    csv = std::move(r.csv);
    code = r.exit_code;
  } catch (const std::exception& e) {
    code = exit_code_for(e);
    body["command"] = to_json(cmd);
    const auto* lib = dynamic_cast<const Error*>(&e);
    body["error"] = lib ? std::string(to_string(lib->kind())) : std::string("Error");
    body["message"] = e.what();
    if (lib && !lib->witness().empty()) body["witness"] = lib->witness();
    if (lib && lib->position() != Error::npos) body["position"] = lib->position();
    err << e.what() << '\n';
  }
  const std::string text = csv ? *csv : body.dump(2) + "\n";
  if (cmd.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cmd.out);
    if (!file) {
      err << "cannot write " << cmd.out << '\n';
      return 2;
    }
    file << text;
  }
  return code;
}

}  // namespace staudt::cli
