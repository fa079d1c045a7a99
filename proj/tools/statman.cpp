// statman command-line front end.
//
// Exit status: 0 when the command ran (claim mismatches included), 2 for
// malformed input or a structural error, CLI11's code for bad arguments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "statman/statman.hpp"

namespace {

statman::ManifoldDoc load(const std::string& target) {
  if (std::filesystem::is_regular_file(target)) {
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    return statman::parse(ss.str());
  }
  if (statman::find_fixture(target)) return statman::load_fixture(target);
  throw statman::StructuralError("'" + target + "' is neither a readable file nor a built-in fixture");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dual-connection geometry on frame-presented statistical manifolds"};
  app.require_subcommand(1);

  std::string target, connection, ricci_source = "statistical", sign = "standard", trace = "first-slot", assign, tangent, submanifold;
  std::string format = "text", structure = "kenmotsu", kind, potential, lambda, pair, c_bar = "-1";
  std::vector<int> sections;
  statman::OracleOptions oracle;

  auto common = [&](CLI::App* sub, bool needs_target = true) {
    if (needs_target) sub->add_option("target", target, "presentation file or built-in fixture name")->required();
    sub->add_option("--connection", connection, "connection block (default nabla)");
    sub->add_option("--ricci-source", ricci_source, "nabla | nabla-star | statistical");
    sub->add_option("--sign", sign, "standard | reversed");
    sub->add_option("--trace", trace, "first-slot | last-pairing");
    sub->add_option("--assign", assign, "parameter values, e.g. a=0,b=2");
    sub->add_option("--format", format, "text | machine")->check(CLI::IsMember({"text", "machine"}));
  };

  std::vector<CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help, bool needs_target = true) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s, needs_target);
    subs.push_back(s);
    return s;
  };

  add("check", "structure checks")->add_option("--structure", structure, "statistical | almost-contact | kenmotsu | all");
  add("curvature", "nonzero curvature components");
  add("ricci", "Ricci tensor and Einstein test");
  add("scalar", "scalar curvature");
  add("sectional", "sectional curvatures")->add_option("--pair", pair, "two frame names, e.g. e1,e2");
  auto* sol = add("soliton", "solve a soliton equation for lambda (and omega)");
  sol->add_option("--kind", kind, "ricci | eta-ricci | yamabe | quasi-yamabe (default eta-ricci with a contact block, else ricci)");
  sol->add_option("--potential", potential, "potential vector field expression (default xi or 0)");
  auto* cls = add("classify", "shrinking / steady / expanding label");
  cls->add_option("--lambda", lambda, "lambda expression; solved when omitted");
  cls->add_option("--kind", kind, "soliton kind used when solving");
  cls->add_option("--potential", potential, "potential used when solving");
  auto* sub = add("sub", "induced structure, umbilicity, Gauss equations, phi split");
  sub->add_option("--tangent", tangent, "tangent frame names, e.g. e1,e3,xi");
  sub->add_option("--submanifold", submanifold, "submanifold block name");
  auto* aud = add("audit", "per-section theorem audit");
  aud->add_option("--section", sections, "sections 2..8 (repeatable; default all)");
  aud->add_option("--c-bar", c_bar, "constant of the Ricci-form audit");
  add("claims", "evaluate every claim directive in the document");
  auto* orc = add("oracle", "finite-difference cross-validation");
  orc->add_option("--points", oracle.points, "sample points");
  orc->add_option("--step", oracle.step, "difference step");
  orc->add_option("--tol", oracle.tol, "relative tolerance");
  orc->add_option("--seed", oracle.seed, "point sequence offset");
  add("fixtures", "list built-in fixtures", false);

  CLI11_PARSE(app, argc, argv);

  try {
    statman::CommandFlags f;
    f.connection = connection;
    f.ricci_source = statman::parse_ricci_source(ricci_source);
    if (sign != "standard" && sign != "reversed") throw statman::StructuralError("--sign must be standard or reversed");
    f.sign = sign == "standard" ? statman::CurvatureSign::standard : statman::CurvatureSign::reversed;
    if (trace != "first-slot" && trace != "last-pairing") throw statman::StructuralError("--trace must be first-slot or last-pairing");
    f.trace = trace == "first-slot" ? statman::RicciTrace::first_slot : statman::RicciTrace::last_pairing;
    if (!assign.empty()) f.assign = statman::parse_assignment(assign);
    f.tangent = split(tangent);
    f.submanifold = submanifold;
    f.structure = structure;
    if (!kind.empty()) f.kind = statman::parse_soliton_kind(kind);
    f.potential = potential;
    f.lambda = lambda;
    f.sections = sections;
    f.pair = split(pair);
    f.c_bar = statman::parse_rational(c_bar);
    f.oracle = oracle;

    const std::string command = app.get_subcommands().front()->get_name();
    const statman::Format fmt = format == "machine" ? statman::Format::machine : statman::Format::text;
    if (command == "fixtures") {
      std::cout << statman::emit(statman::list_fixtures(), fmt);
      return 0;
    }
    const statman::ManifoldDoc doc = load(target);
    std::cout << statman::emit(statman::run_command(doc, command, f), fmt);
    return 0;
  } catch (const statman::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
