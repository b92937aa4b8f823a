#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "k3/verify.hpp"

using nlohmann::json;

namespace {

struct Flags {
  k3::VerifyOptions opt;
  bool json = false, timings = false;
  bool count = false, summary = false;
  std::string vector, matrix;
  std::size_t random_len = 0;
};

std::string line_str(const k3::ProjLine& l) {
  std::string s;
  for (const auto& r : l.rows()) {
    s += s.empty() ? "[" : " [";
    for (int k = 0; k < 4; ++k) s += (k ? "," : "") + r[k].str();
    s += "]";
  }
  return s;
}

json rat_json(const k3::RatVec& v) { return k3::to_json_vector(v); }

std::string word_str(const k3::GeneratorWord& w) {
  std::string s;
  for (const auto& t : w) s += (s.empty() ? "" : " ") + k3::token_name(t);
  return s;
}

// comma separated integers or the name of a fixture vector
k3::IntVec parse_vector(k3::Context& ctx, const std::string& text) {
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text[0]))) return ctx.vec22(text);
  k3::IntVec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw k3::Error(k3::ErrorCode::BadInput, "bad integer '" + tok + "'");
    }
  }
  if (v.size() != 22) throw k3::Error(k3::ErrorCode::BadInput, "expected 22 coordinates");
  return v;
}

void emit(const Flags& f, const json& j, const std::string& text) {
  if (f.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_lines(k3::Context& ctx, const Flags& f) {
  const auto& sc = ctx.scan();
  if (f.count) {
    emit(f, {{"lines", sc.lines.size()}}, std::to_string(sc.lines.size()) + "\n");
    return 0;
  }
  json a = json::array();
  std::string text;
  for (std::size_t k = 0; k < sc.lines.size(); ++k) {
    a.push_back({{"index", k}, {"rows", line_str(sc.lines[k])}});
    text += std::to_string(k) + " " + line_str(sc.lines[k]) + "\n";
  }
  emit(f, {{"lines", a}}, text);
  return 0;
}

int cmd_embed(k3::Context& ctx, const Flags& f) {
  const auto& g = ctx.gluing();
  json j{{"rank", g.L.rank()},
         {"signature", {g.L.positive(), g.L.negative()}},
         {"even", g.L.is_even()},
         {"unimodular", g.L.is_unimodular()},
         {"det_S", g.S.det().get_str()},
         {"det_T", g.T.det().get_str()}};
  std::ostringstream o;
  o << "L rank " << g.L.rank() << " signature (" << g.L.positive() << "," << g.L.negative() << ") "
    << (g.L.is_even() ? "even" : "odd") << " " << (g.L.is_unimodular() ? "unimodular" : "not unimodular") << "\n";
  emit(f, j, o.str());
  return 0;
}

int cmd_walls(k3::Context& ctx, const Flags& f) {
  const auto& lr = ctx.leech_roots();
  std::map<std::pair<k3::Rat, k3::Rat>, std::vector<const k3::LeechRoot*>> parts;
  for (const auto& r : lr) parts[{r.a, r.n}].push_back(&r);
  std::vector<std::size_t> sizes;
  for (const auto& [k, v] : parts) sizes.push_back(v.size());
  std::sort(sizes.begin(), sizes.end());
  if (f.summary) {
    std::string text;
    for (auto s : sizes) text += (text.empty() ? "" : " ") + std::to_string(s);
    emit(f, {{"partition", sizes}}, text + "\n");
    return 0;
  }
  json a = json::array();
  std::string text;
  for (const auto& [k, v] : parts) {
    a.push_back({{"a", k3::to_string(k.first)}, {"n", k3::to_string(k.second)}, {"count", v.size()}});
    text += "a=" + k3::to_string(k.first) + " n=" + k3::to_string(k.second) + " count=" + std::to_string(v.size()) + "\n";
  }
  json roots = json::array();
  for (const auto& r : lr) roots.push_back(rat_json(r.rS));
  emit(f, {{"parts", a}, {"walls", roots}}, text);
  return 0;
}

int cmd_orbits(k3::Context& ctx, const Flags& f) {
  const auto& G = ctx.pgu_group();
  json j{{"group_order", G.order().get_str()}, {"line_orbit", G.orbit(0).size()}};
  std::string text = "PGU order " + G.order().get_str() + ", line orbit " + std::to_string(G.orbit(0).size()) + "\n";
  if (!ctx.options().no_fixtures) {
    const auto& t = ctx.tables();
    j["orbits"] = {{"lines", t.lines.elements.size()}, {"b1", t.w648.elements.size()}, {"b2", t.w5184.elements.size()}};
    text += "orbit sizes " + std::to_string(t.lines.elements.size()) + " " + std::to_string(t.w648.elements.size()) +
            " " + std::to_string(t.w5184.elements.size()) + "\n";
  }
  emit(f, j, text);
  return 0;
}

int cmd_polarizations(k3::Context& ctx, const Flags& f) {
  const auto& fx = ctx.fixtures();
  k3::Lattice S(fx.N);
  json j = json::object();
  std::string text;
  for (auto [name, deg] : std::vector<std::pair<std::string, int>>{{"m1", 2}, {"m2", 2}, {"h1", 4}, {"h2", 4}}) {
    bool ok = k3::polarization_test(S, fx.vec("h0"), fx.vec(name), deg);
    json e{{"degree", deg}, {"polarization", ok}};
    text += name + " degree " + std::to_string(deg) + (ok ? " polarization" : " not a polarization");
    if (deg == 2 && ok) {
      auto cc = k3::contracted_classes(S, fx.vec("h0"), fx.vec(name));
      e["contracted"] = cc.type.str();
      text += " contracted " + cc.type.str();
    }
    text += "\n";
    j[name] = e;
  }
  emit(f, j, text);
  return 0;
}

int cmd_involutions(k3::Context& ctx, const Flags& f) {
  const auto& fx = ctx.fixtures();
  k3::Lattice S(fx.N);
  json j = json::object();
  std::string text;
  for (auto [m, tbl] : std::vector<std::pair<std::string, std::string>>{{"m1", "A1"}, {"m2", "A2"}}) {
    auto cc = k3::contracted_classes(S, fx.vec("h0"), fx.vec(m));
    auto A = k3::involution_from_eigenspaces(S, fx.vec(m), cc);
    bool same = A == fx.matrices.at(tbl);
    j[m] = {{"matrix", k3::to_json(A)}, {"equals_" + tbl, same}};
    text += m + ": involution " + (same ? "equals " : "differs from ") + tbl + "\n";
  }
  emit(f, j, text);
  return 0;
}

int cmd_reduce(k3::Context& ctx, const Flags& f) {
  k3::IntVec v = parse_vector(ctx, f.vector);
  auto r = k3::reduce_to_chamber(v, ctx.tables(), ctx.generators());
  json tr = json::array();
  for (const auto& x : r.trace) tr.push_back(x.get_str());
  json res = json::array();
  for (const auto& x : r.result) res.push_back(x.get_str());
  emit(f, {{"word", k3::to_json(r.word)}, {"result", res}, {"trace", tr}}, word_str(r.word) + "\n");
  return 0;
}

int cmd_factor(k3::Context& ctx, const Flags& f) {
  const auto& gens = ctx.generators();
  k3::IntMatrix M;
  if (!f.matrix.empty()) {
    auto it = ctx.fixtures().matrices.find(f.matrix);
    if (it == ctx.fixtures().matrices.end()) throw k3::Error(k3::ErrorCode::BadInput, "no fixture matrix " + f.matrix);
    M = it->second;
  } else {
    std::mt19937_64 rng(ctx.options().seed);
    M = k3::evaluate(k3::random_word(rng, std::max<std::size_t>(f.random_len, 1), true, gens.pgu.size()), gens);
  }
  auto w = k3::factor_in_oplus(M, ctx.tables(), gens);
  bool ok = k3::evaluate(w, gens) == M;
  emit(f, {{"word", k3::to_json(w)}, {"verified", ok}}, word_str(w) + "\n");
  return ok ? 0 : 1;
}

int cmd_verify(k3::Context& ctx, const Flags& f) {
  auto rep = k3::verify_all(ctx, f.json ? std::function<void(const k3::Claim&)>{} : [](const k3::Claim& c) {
    std::cout << c.id << " " << c.status << "\n" << std::flush;
  });
  if (f.json)
    std::cout << rep.to_json(f.timings).dump(2) << "\n";
  else
    std::cout << rep.passed() << " passed, " << rep.failed() << " failed, " << rep.skipped() << " skipped\n";
  return rep.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice and chamber computations for the Fermat quartic over F9"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--jobs", f.opt.jobs, "enumeration width")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.opt.seed, "seed for random words");
  app.add_flag("--no-fixtures", f.opt.no_fixtures, "skip fixture comparisons");
  app.add_flag("--json", f.json, "machine-readable output");
  app.add_option("--data-dir", f.opt.data_dir, "fixture directory (default $K3_DATA_DIR)");
  app.add_flag("--timings", f.timings, "include wall-clock fields in the report");

  auto* lines = app.add_subcommand("lines", "lines on the Fermat quartic over F9");
  lines->add_flag("--count", f.count, "print the number of lines only");
  app.add_subcommand("embed", "even unimodular overlattice of S + T");
  auto* walls = app.add_subcommand("walls", "Leech roots and walls of the chamber");
  walls->add_flag("--summary", f.summary, "print partition sizes only");
  app.add_subcommand("orbits", "PGU orbits of lines and walls");
  app.add_subcommand("polarizations", "polarization tests for m1, m2, h1, h2");
  app.add_subcommand("involutions", "double-plane involutions from eigenspaces");
  auto* reduce = app.add_subcommand("reduce", "reduce a vector into the chamber");
  reduce->add_option("--vector", f.vector, "22 comma-separated integers or a fixture name")->required();
  auto* factor = app.add_subcommand("factor", "factor an isometry over the generators");
  factor->add_option("--matrix", f.matrix, "fixture matrix name");
  factor->add_option("--random", f.random_len, "factor a random word of at most this length");
  app.add_subcommand("verify-all", "run every acceptance criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  using Cmd = int (*)(k3::Context&, const Flags&);
  static const std::map<std::string, Cmd> cmds = {
      {"lines", cmd_lines},   {"embed", cmd_embed},     {"walls", cmd_walls},
      {"orbits", cmd_orbits}, {"polarizations", cmd_polarizations}, {"involutions", cmd_involutions},
      {"reduce", cmd_reduce}, {"factor", cmd_factor},   {"verify-all", cmd_verify},
  };
  try {
    k3::Context ctx(f.opt);
    return cmds.at(app.get_subcommands().front()->get_name())(ctx, f);
  } catch (const k3::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == k3::ErrorCode::BadInput || e.code() == k3::ErrorCode::DimensionMismatch ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
