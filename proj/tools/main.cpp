#include "report.hpp"

#include "odeinv/isotropy.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace odeinv;
using odeinv::cli::json;
using odeinv::cli::to_json;

namespace {

constexpr int kInputError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path, text;
  EquationFile file;
};

Input load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  Input input{path, ss.str(), {}};
  try {
    input.file = parse_equation_file(input.text);
  } catch (const FileFormatError &e) {
    throw InputError(path + ": " + e.what());
  }
  return input;
}

const Equation &equation_of(const Input &in) {
  if (!in.file.equation)
    throw InputError(in.path + ": no [equation] block");
  return *in.file.equation;
}

Point parse_point(const std::string &text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw InputError("point '" + text + "' must look like x,y");
  try {
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  } catch (const std::exception &e) {
    throw InputError("point '" + text + "': " + e.what());
  }
}

GridSpec grid_or_throw(const std::string &text) {
  try {
    return parse_grid(text);
  } catch (const std::exception &e) {
    throw InputError("grid '" + text + "': " + e.what());
  }
}

struct Context {
  std::vector<std::string> argv;
  std::string format = "text";
  std::uint64_t seed = 1;
  json inputs = json::array();
  json warnings = json::array();

  void record(const Input &in) {
    inputs.push_back({{"path", in.path}, {"sha256", cli::sha256_hex(in.text)}});
  }

  int emit(const std::string &command, json results, int code = 0) {
    json report = {{"command", {{"name", command}, {"argv", argv}}},
                   {"inputs", inputs},
                   {"results", std::move(results)},
                   {"warnings", warnings}};
    if (format == "json")
      std::cout << report.dump(2) << "\n";
    else
      std::cout << cli::render_text(report);
    return code;
  }
};

json f_json(const FValues &f) {
  json out = {{"F1", to_json(f.F1)}, {"F2", to_json(f.F2)}};
  if (f.F3)
    out["F3"] = to_json(*f.F3);
  return out;
}

json orbit_json(const OrbitLabel &l) {
  json out = {{"label", to_string(l)}};
  if (!l.reason.empty())
    out["reason"] = l.reason;
  return out;
}

json invariants_json(const LieDerivatives<Rational> &L, const Rational &F3, bool lie) {
  json out = json::object();
  for (int k = 0; k < 6; ++k) {
    std::string name = "I" + std::to_string(k + 1);
    out["scalar"][name] = to_json(L.I[k], F3);
    if (lie)
      for (int j = 0; j < 2; ++j)
        out["lie"]["xi" + std::to_string(j + 1) + "(" + name + ")"] = to_json(L.xi[j][k], F3);
  }
  return out;
}

json frame_json(const Frame<Rational> &f, const Rational &F3) {
  return {{"xi1", {to_json(f.xi1[0], F3), to_json(f.xi1[1], F3)}},
          {"xi2", {to_json(f.xi2[0], F3), to_json(f.xi2[1], F3)}}};
}

int cmd_analyze(Context &ctx, const std::string &path, const std::string &point, int order) {
  Input in = load(path);
  ctx.record(in);
  Point p = parse_point(point);
  if (order < 2)
    throw InputError("--order must be at least 2");
  RSectionJet s = section_jet(equation_of(in), p.first, p.second, order);
  FValues f = f_invariants(s);
  json r = {{"point", to_json(p)}, {"order", order}, {"F", f_json(f)}};
  r["orbit"]["2-jet"] = orbit_json(classify_orbit(s.truncated(2)));
  if (order >= 3)
    r["orbit"]["3-jet"] = orbit_json(classify_orbit(s.truncated(3)));
  r["linearizable_at_point"] = f.F1 == 0 && f.F2 == 0;
  Derived2 d2 = derived2(s);
  r["tensors"]["omega2"] = to_json(omega2(s));
  r["tensors"]["alpha2"] = to_json(d2.alpha);
  r["tensors"]["beta2"] = to_json(d2.beta);
  if (order >= 3) {
    RSectionJet s3 = s.truncated(3);
    if (f.F1 != 0 || f.F2 != 0)
      r["tensors"]["omega3"] = to_json(omega3(s3));
    else
      ctx.warnings.push_back("omega3 is undefined where F1 = F2 = 0");
    Derived3 d3 = derived3(s3);
    r["tensors"]["alpha3"] = to_json(d3.alpha);
    r["tensors"]["beta3"] = to_json(d3.beta);
    r["tensors"]["nu"] = to_json(d3.nu);
    if (*f.F3 != 0) {
      r["frame"] = frame_json(frame(s3), *f.F3);
      if (order >= 5)
        r["invariants"] = invariants_json(lie_derivatives(s.truncated(5)), *f.F3, true);
      else if (order == 4) {
        LieDerivatives<Rational> L;
        L.I = scalar_invariants(s);
        r["invariants"] = invariants_json(L, *f.F3, false);
      }
    } else {
      ctx.warnings.push_back("degenerate 3-jet: F3 = 0, no frame or scalar invariants");
    }
  }
  return ctx.emit("analyze", r);
}

int cmd_orbit(Context &ctx, const std::string &path, const std::string &point, int order) {
  Input in = load(path);
  ctx.record(in);
  Point p = parse_point(point);
  if (order != 2 && order != 3)
    throw InputError("--order must be 2 or 3");
  RSectionJet s = section_jet(equation_of(in), p.first, p.second, order);
  json r = {{"point", to_json(p)}, {"order", order}, {"F", f_json(f_invariants(s))}};
  r["orbit"] = orbit_json(classify_orbit(s));
  r["isotropy_dimension"] = isotropy_algebra(s, order).dim();
  return ctx.emit("orbit", r);
}

int cmd_linearizable(Context &ctx, const std::string &path, const std::string &point,
                     const std::string &grid) {
  Input in = load(path);
  ctx.record(in);
  Point p = parse_point(point);
  GridSpec g = grid_or_throw(grid);
  const Equation &eq = equation_of(in);
  bool all = true;
  json samples = json::array();
  for (const auto &q : g.points(p)) {
    FValues f = f_invariants(section_jet(eq, q.first, q.second, 2));
    bool lin = f.F1 == 0 && f.F2 == 0;
    all = all && lin;
    samples.push_back({{"point", to_json(q)}, {"F1", to_json(f.F1)}, {"F2", to_json(f.F2)},
                       {"linearizable", lin}});
  }
  json r = {{"grid", to_string(g)}, {"samples", samples}, {"linearizable_on_samples", all}};
  return ctx.emit("linearizable", r);
}

int cmd_invariants(Context &ctx, const std::string &path, const std::string &point) {
  Input in = load(path);
  ctx.record(in);
  Point p = parse_point(point);
  RSectionJet s = section_jet(equation_of(in), p.first, p.second, 5);
  Rational F3 = *f_invariants(s).F3;
  if (F3 == 0)
    throw InputError("F3 vanishes at the point: scalar invariants need a regular point");
  json r = {{"point", to_json(p)}, {"F3", to_json(F3)}};
  r["frame"] = frame_json(frame(s.truncated(3)), F3);
  r["invariants"] = invariants_json(lie_derivatives(s), F3, true);
  return ctx.emit("invariants", r);
}

json signature_json(const InvariantSignature &s) {
  json gens = json::array();
  for (int g : s.generators)
    gens.push_back(invariant_name(g));
  json values = json::object();
  for (int k = 0; k < kInvariantCount; ++k)
    values[invariant_name(k)] = to_json(s.at_point.values[k].v, s.at_point.values[k].F3);
  json out = {{"case", to_string(s.kind)}, {"generators", gens}, {"point", to_json(s.point)},
              {"values", values}};
  if (!s.note.empty())
    out["note"] = s.note;
  return out;
}

int cmd_equiv(Context &ctx, const std::string &path1, const std::string &path2,
              const std::string &point1, const std::string &point2, const std::string &grid) {
  Input a = load(path1), b = load(path2);
  ctx.record(a);
  ctx.record(b);
  Point p1 = parse_point(point1), p2 = parse_point(point2);
  GridSpec g = grid_or_throw(grid);
  EquivalenceReport rep;
  try {
    rep = check_equivalence(equation_of(a), p1, equation_of(b), p2, g);
  } catch (const NonRegularPointError &e) {
    throw InputError(std::string("non-regular point: ") + e.what());
  }
  json matches = json::array();
  for (const auto &m : rep.matches)
    matches.push_back({{"p1", to_json(m.p1)}, {"p2", to_json(m.p2)}, {"agree", m.agree}});
  for (const auto &w : rep.warnings)
    ctx.warnings.push_back(w);
  json r = {{"verdict", to_string(rep.verdict)},
            {"reason", rep.reason},
            {"grid", to_string(g)},
            {"first", signature_json(rep.first)},
            {"second", signature_json(rep.second)},
            {"grid_matches", matches}};
  return ctx.emit("equiv", r, exit_code(rep.verdict));
}

// Random jets of the given order with small rational entries.
RSectionJet random_section(std::mt19937_64 &gen, const Point &p, int order) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  RSectionJet s(p.first, p.second, order);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= order; ++d)
      for (int n = 0; n <= d; ++n)
        s.u(i, d - n, n) = make_rational(num(gen), den(gen));
  return s;
}

int cmd_pushforward(Context &ctx, const std::string &path, const std::string &point, int order,
                    bool verify) {
  Input in = load(path);
  ctx.record(in);
  if (!in.file.map)
    throw InputError(in.path + ": no [map] block");
  const Equation &eq = equation_of(in);
  const MapExprs &m = *in.file.map;
  Point p = parse_point(point);
  if (order < 0)
    throw InputError("--order must be non-negative");
  MapJet f;
  try {
    f = map_jet(make_point_map(m.f1, m.f2, p.first, p.second), order + 2);
  } catch (const SingularMapError &e) {
    throw InputError(e.what());
  }
  RSectionJet s = section_jet(eq, p.first, p.second, order);
  RSectionJet t = lift_section_jet(f, s);
  MapJet g = invert_map_jet(f);
  json r = {{"point", to_json(p)},
            {"image", {to_string(f.image()[0]), to_string(f.image()[1])}},
            {"order", order},
            {"jacobian_determinant", to_json(det(f.jacobian()))},
            {"source_jet", to_json(s)},
            {"transformed_jet", to_json(t)},
            {"inverse_jet", to_json(g)}};
  if (order >= 2)
    r["transformed_F"] = f_json(f_invariants(t));
  if (verify) {
    json v = json::object();
    Point fp{f.image()[0], f.image()[1]};
    bool comp = compose(f, g) == MapJet::identity(fp.first, fp.second, f.order()) &&
                compose(g, f) == MapJet::identity(p.first, p.second, f.order());
    v["inverse_composition"] = comp ? "exact-match" : "mismatch";
    RSectionJet back = lift_section_jet(g, t.truncated(order));
    bool round = back == s;
    std::mt19937_64 gen(ctx.seed);
    for (int trial = 0; trial < 5 && round; ++trial) {
      RSectionJet r0 = random_section(gen, p, order);
      round = lift_section_jet(g, lift_section_jet(f, r0)) == r0;
    }
    v["round_trip"] = round ? "exact-match" : "mismatch";
    v["seed"] = ctx.seed;
    if (m.g1) {
      Equation target = transformed_equation(eq, m);
      bool same = section_jet(target, fp.first, fp.second, order) == t;
      v["explicit_inverse"] = same ? "exact-match" : "mismatch";
    }
    r["verify"] = v;
    bool ok = comp && round;
    for (const auto &[k, val] : v.items())
      ok = ok && (!val.is_string() || val != "mismatch");
    return ctx.emit("pushforward", r, ok ? 0 : 1);
  }
  return ctx.emit("pushforward", r);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Point-transformation invariants of y'' = a3 y'^3 + a2 y'^2 + a1 y' + a0"};
  app.require_subcommand(1);
  Context ctx;
  for (int i = 0; i < argc; ++i)
    ctx.argv.push_back(argv[i]);
  app.add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--seed", ctx.seed, "Seed for randomized self-checks")->capture_default_str();

  std::string file, file2, point = "0,0", point2 = "0,0", grid;
  int order = 3;
  bool verify = false;
  auto fmt = [&](CLI::App *sub) {
    sub->add_option("--format", ctx.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", ctx.seed, "Seed for randomized self-checks");
  };

  auto *analyze = app.add_subcommand("analyze", "Invariant dossier of an equation at a point");
  analyze->add_option("file", file, "Equation file")->required();
  analyze->add_option("--point", point, "Point x,y")->capture_default_str();
  analyze->add_option("--order", order, "Jet order")->capture_default_str();
  fmt(analyze);

  auto *orbit = app.add_subcommand("orbit", "Orbit of the 2- or 3-jet at a point");
  orbit->add_option("file", file, "Equation file")->required();
  orbit->add_option("--point", point, "Point x,y")->capture_default_str();
  orbit->add_option("--order", order, "2 or 3")->capture_default_str();
  fmt(orbit);

  auto *lin = app.add_subcommand("linearizable", "F1 = F2 = 0 on sample points");
  lin->add_option("file", file, "Equation file")->required();
  lin->add_option("--point", point, "Point x,y")->capture_default_str();
  std::string lin_grid = "0,0:0,0:1,1";
  lin->add_option("--grid", lin_grid, "Offsets x0,y0:x1,y1:nx,ny")->capture_default_str();
  fmt(lin);

  auto *inv = app.add_subcommand("invariants", "I1..I6 and their Lie derivatives");
  inv->add_option("file", file, "Equation file")->required();
  inv->add_option("--point", point, "Point x,y")->capture_default_str();
  fmt(inv);

  auto *equiv = app.add_subcommand("equiv", "Necessary conditions for point equivalence");
  equiv->add_option("file1", file, "First equation file")->required();
  equiv->add_option("file2", file2, "Second equation file")->required();
  equiv->add_option("--point1", point, "Marked point of the first equation")->capture_default_str();
  equiv->add_option("--point2", point2, "Marked point of the second equation")->capture_default_str();
  grid = "0,0:1/4,1/4:2,2";
  equiv->add_option("--grid", grid, "Offsets x0,y0:x1,y1:nx,ny")->capture_default_str();
  fmt(equiv);

  auto *push = app.add_subcommand("pushforward", "Transformed jet under the [map] block");
  push->add_option("file", file, "File with [equation] and [map]")->required();
  push->add_option("--point", point, "Point x,y")->capture_default_str();
  push->add_option("--order", order, "Jet order of the section")->capture_default_str();
  push->add_flag("--verify", verify, "Check the inverse jet and round trips exactly");
  fmt(push);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze)
      return cmd_analyze(ctx, file, point, order);
    if (*orbit)
      return cmd_orbit(ctx, file, point, order);
    if (*lin)
      return cmd_linearizable(ctx, file, point, lin_grid);
    if (*inv)
      return cmd_invariants(ctx, file, point);
    if (*equiv)
      return cmd_equiv(ctx, file, file2, point, point2, grid);
    if (*push)
      return cmd_pushforward(ctx, file, point, order, verify);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const EvaluationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
