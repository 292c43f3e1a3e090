#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "dforms/io.hpp"

using namespace dforms;
using io::Json;

namespace {

constexpr int kOk = 0, kParse = 1, kPrecondition = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string op, method = "both", vector, map, phi, cell, window, boundary = "first";
};

Json load(const std::string& path) { return io::read_file(path); }
DeltaForm delta(const std::string& path) { return io::delta_form_from(load(path)); }

void need(const Options& o, std::size_t k, const char* verb) {
  if (o.inputs.size() != k)
    throw io::ParseError(std::string(verb) + " expects " + std::to_string(k) + " input file(s)");
}

WeightedCell weighted_cell(const std::string& path) {
  const Json j = load(path);
  Rational w = j.contains("weight") ? io::rational_from(j.at("weight")) : Rational(1);
  if (sgn(w) <= 0) throw io::ParseError("weights must be positive");
  return {io::polyhedron_from(j), w};
}

DeltaForm apply_op(const std::string& op, const DeltaForm& t) {
  if (op == "dP1") return dP_prime(t);
  if (op == "dP2") return dP_second(t);
  if (op == "bd1") return boundary_prime(t);
  if (op == "bd2") return boundary_second(t);
  if (op == "d1") return d_prime(t);
  if (op == "d2") return d_second(t);
  throw io::ParseError("unknown operator " + op);
}

Json wedge(const Options& o) {
  need(o, 2, "wedge");
  const DeltaForm s = delta(o.inputs[0]), t = delta(o.inputs[1]);
  if (s.ambient() != t.ambient()) throw io::ParseError("inputs live in different dimensions");
  Json out;
  std::optional<DeltaForm> diag, disp;
  if (o.method != "displacement") diag = wedge_diagonal(s, t);
  if (o.method != "diagonal") {
    RatVec v;
    if (!o.vector.empty()) {
      v = io::parse_vector(o.vector);
      if (v.size() != s.ambient()) throw io::ParseError("displacement vector has the wrong dimension");
      auto g = is_generic(v, s, t);
      if (!g.generic) {
        std::vector<Polyhedron> cells{g.failing->first, g.failing->second};
        throw PreconditionError("non_generic", "vector is not generic: " + g.reason, cells);
      }
    } else {
      auto found = find_generic_vector(s, t);
      if (!found) throw PreconditionError("non_generic", "no generic vector found in the search box");
      v = *found;
    }
    disp = displacement_product(s, t, v);
    out["vector"] = io::to_json(v);
  }
  if (o.method == "diagonal") return io::to_json(*diag);
  if (o.method == "displacement") return io::to_json(*disp);
  out["diagonal"] = io::to_json(*diag);
  out["displacement"] = io::to_json(*disp);
  out["verdict"] = equals(*diag, *disp) ? "match" : "mismatch";
  return out;
}

Json pullback(const Options& o) {
  need(o, 1, "pullback");
  const AffineMap f = io::affine_map_from(load(o.map));
  const DeltaForm s = delta(o.inputs[0]);
  if (s.ambient() != f.matrix.rows()) throw io::ParseError("map target does not match the input dimension");
  if (rank(f.matrix) == f.matrix.rows()) return io::to_json(pullback_surjective(f, s));
  return io::to_json(pullback_general(f, s));
}

// Output document and exit status of one verb.
std::pair<Json, int> dispatch(const std::string& verb, const Options& o) {
  if (verb == "check-balance") {
    need(o, 1, "check-balance");
    const BalanceReport r = is_balanced(delta(o.inputs[0]));
    return {io::to_json(r), r.balanced ? kOk : kPrecondition};
  }
  if (verb == "apply") {
    need(o, 1, "apply");
    return {io::to_json(apply_op(o.op, delta(o.inputs[0]))), kOk};
  }
  if (verb == "wedge") {
    Json out = wedge(o);
    const bool bad = out.contains("verdict") && out["verdict"] != "match";
    return {out, bad ? kPrecondition : kOk};
  }
  if (verb == "transversal") {
    need(o, 2, "transversal");
    return {io::to_json(transversal_product(delta(o.inputs[0]), delta(o.inputs[1]))), kOk};
  }
  if (verb == "divisor") {
    need(o, 1, "divisor");
    return {io::to_json(divisor_intersect(io::pl_function_from(load(o.phi)), delta(o.inputs[0]))), kOk};
  }
  if (verb == "pushforward") {
    need(o, 1, "pushforward");
    return {io::to_json(pushforward(io::affine_map_from(load(o.map)), delta(o.inputs[0]))), kOk};
  }
  if (verb == "pullback") return {pullback(o), kOk};
  if (verb == "integrate") {
    need(o, 1, "integrate");
    const WeightedCell c = weighted_cell(o.cell);
    const SuperForm eta = io::superform_from(load(o.inputs[0]));
    return {Json{{"value", io::to_json(integrate_top(eta, c))}}, kOk};
  }
  if (verb == "stokes-check") {
    need(o, 1, "stokes-check");
    const WeightedCell c = weighted_cell(o.cell);
    const SuperForm alpha = io::superform_from(load(o.inputs[0]));
    const auto r = stokes_check(alpha, c, o.boundary == "second" ? Boundary::second : Boundary::first);
    return {Json{{"lhs", io::to_json(r.lhs)}, {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}}, r.equal ? kOk : kPrecondition};
  }
  if (verb == "eval") {
    need(o, 2, "eval");
    const DeltaForm t = delta(o.inputs[0]);
    const SuperForm eta = io::superform_from(load(o.inputs[1]));
    const Polyhedron window = io::polyhedron_from(load(o.window));
    return {Json{{"value", io::to_json(eval_pairing(t, eta, window))}}, kOk};
  }
  if (verb == "suite") {
    need(o, 3, "suite");
    const SuiteReport r =
        product_property_suite(delta(o.inputs[0]), delta(o.inputs[1]), delta(o.inputs[2]), io::affine_map_from(load(o.map)));
    return {io::to_json(r), r.passed() ? kOk : kPrecondition};
  }
  throw io::ParseError("unknown verb " + verb);
}

Json error_document(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

std::size_t threads_from_env() {
  const char* s = std::getenv("DFORMS_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end || v < 1) throw io::ParseError("DFORMS_THREADS must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of delta-forms on Q^n"};
  app.require_subcommand(1, 1);
  Options o;
  auto inputs = [&](CLI::App* c, const std::string& what) { c->add_option("inputs", o.inputs, what)->required()->check(CLI::ExistingFile); };
  auto with_map = [&](CLI::App* c) { c->add_option("--map", o.map, "affine map JSON")->required()->check(CLI::ExistingFile); };
  auto with_cell = [&](CLI::App* c) { c->add_option("--cell", o.cell, "weighted cell JSON")->required()->check(CLI::ExistingFile); };

  inputs(app.add_subcommand("check-balance", "verify the balancing condition"), "delta-form");
  auto* apply = app.add_subcommand("apply", "apply a differential operator");
  inputs(apply, "delta-form");
  apply->add_option("--op", o.op, "operator")->required()->check(CLI::IsMember({"dP1", "dP2", "bd1", "bd2", "d1", "d2"}));
  auto* wedge_cmd = app.add_subcommand("wedge", "wedge product of two delta-forms");
  inputs(wedge_cmd, "delta-forms S T");
  wedge_cmd->add_option("--method", o.method, "diagonal, displacement or both")
      ->check(CLI::IsMember({"diagonal", "displacement", "both"}));
  wedge_cmd->add_option("--vector", o.vector, "displacement vector \"a/b,c/d,...\"");
  inputs(app.add_subcommand("transversal", "transversal product"), "delta-forms S T");
  auto* divisor = app.add_subcommand("divisor", "intersect with the corner locus of a PL function");
  inputs(divisor, "delta-form");
  divisor->add_option("--phi", o.phi, "PL function JSON")->required()->check(CLI::ExistingFile);
  auto* push = app.add_subcommand("pushforward", "push-forward along an affine map");
  inputs(push, "delta-form");
  with_map(push);
  auto* pull = app.add_subcommand("pullback", "pull-back along an affine map");
  inputs(pull, "delta-form");
  with_map(pull);
  auto* integ = app.add_subcommand("integrate", "integrate a top form over a weighted cell");
  inputs(integ, "superform");
  with_cell(integ);
  auto* stokes = app.add_subcommand("stokes-check", "compare the integral of d alpha with the boundary integral");
  inputs(stokes, "superform");
  with_cell(stokes);
  stokes->add_option("--boundary", o.boundary, "first (d') or second (d'')")->check(CLI::IsMember({"first", "second"}));
  auto* eval = app.add_subcommand("eval", "pair a delta-form with a superform on a window");
  inputs(eval, "delta-form and superform");
  eval->add_option("--window", o.window, "bounded polyhedron JSON")->required()->check(CLI::ExistingFile);
  auto* suite = app.add_subcommand("suite", "product identities on S, T, U and a surjective map");
  inputs(suite, "delta-forms S T U");
  with_map(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << io::dump(error_document("parse", e.what()));
    std::cerr << e.what() << "\n";
    return kParse;
  }

  try {
    set_thread_count(threads_from_env());
    auto [doc, code] = dispatch(app.get_subcommands().front()->get_name(), o);
    std::cout << io::dump(doc);
    return code;
  } catch (const PreconditionError& e) {
    std::cout << io::dump(io::to_json(e));
    std::cerr << e.what() << "\n";
    return kPrecondition;
  } catch (const io::ParseError& e) {
    std::cout << io::dump(error_document("parse", e.what()));
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const Json::exception& e) {
    std::cout << io::dump(error_document("parse", e.what()));
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cout << io::dump(error_document("invalid", e.what()));
    std::cerr << e.what() << "\n";
    return kParse;
  }
}
