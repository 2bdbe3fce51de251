// lpa: command-line front end for the Leavitt path algebra library.
//
// Exit codes: 0 success, 1 input or parse error, 2 search bound exhausted or
// undecided, 3 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/lpa.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_undecided = 2;
constexpr int exit_invariant = 3;

struct Options {
  std::string command;
  std::string graph_file;
  std::string field = "rat";
  bool json = false;
  bool cohn = false;
  std::vector<std::string> args;
  std::size_t max_degree = 4;
  std::string vertex;
  std::size_t bound = lpa::QuotientTable<lpa::Rationals>::default_bound;
  std::size_t gabriel_bound = 8;
  std::size_t l_max = 8;
  std::size_t slack = 3;
  std::optional<std::size_t> levels;
  std::optional<std::string> contains;
  // module-type
  bool codim1 = false;
  std::vector<std::size_t> lm;
  std::string family;
  std::size_t n = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lpa::InputError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Positional expressions, or one per nonempty stdin line when none are given.
std::vector<std::string> expressions(const Options& o) {
  if (!o.args.empty()) return o.args;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

void emit(const Options& o, const lpa::Json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

template <lpa::Field F>
class Runner {
 public:
  Runner(const Options& o, const F& field) : o_(o), field_(field) {
    graph_ = lpa::share(lpa::parse_graph(read_file(o.graph_file)));
    cfg_ = lpa::make_config(graph_, o.cohn ? lpa::Mode::cohn : lpa::Mode::leavitt);
  }

  int run() {
    const auto& c = o_.command;
    if (c == "check") return check();
    if (c == "nf") return nf();
    if (c == "mul") return mul();
    if (c == "basis") return basis();
    if (c == "dim") return dim();
    if (c == "cert") return cert();
    if (c == "expand") return expand();
    if (c == "dom") return dom();
    if (c == "shrink") return shrink();
    if (c == "dense") return dense();
    if (c == "schreier") return schreier();
    if (c == "rank") return rank();
    if (c == "open") return open();
    if (c == "two-sided") return two_sided();
    if (c == "express") return express();
    if (c == "dual") return dual();
    if (c == "codim1") return codim1();
    if (c == "extract") return extract();
    if (c == "gabriel") return gabriel();
    throw lpa::InputError("unknown command '" + c + "'");
  }

 private:
  using L = lpa::LeavittElement<F>;
  using Q = lpa::QuiverElement<F>;

  const lpa::Digraph& g() const { return *graph_; }

  L element(const std::string& text) const { return lpa::parse_element(text, cfg_, field_); }
  Q quiver(const std::string& text) const { return lpa::parse_quiver_element(text, cfg_, field_); }

  std::vector<std::string> exprs(std::size_t min) const {
    auto e = expressions(o_);
    if (e.size() < min) throw lpa::InputError("expected at least " + std::to_string(min) + " expression(s)");
    return e;
  }

  std::vector<Q> generators(const std::vector<std::string>& texts) const {
    std::vector<Q> out;
    for (const auto& t : texts) out.push_back(quiver(t));
    return out;
  }

  lpa::TablePtr<F> table(const std::vector<std::string>& texts) const {
    return lpa::share_table(
        lpa::QuotientTable<F>(lpa::RightIdealPresentation<F>(graph_, field_, generators(texts)), o_.bound));
  }

  std::string path_text(const lpa::Path& p) const { return lpa::path_to_expression(g(), p); }

  int check() {
    lpa::Json j = lpa::graph_to_json(g());
    std::ostringstream out;
    out << "graph " << (g().name().empty() ? "(unnamed)" : g().name()) << ": " << g().vertex_count()
        << " vertices, " << g().edge_count() << " edges\n";
    j["kinds"] = lpa::Json::object();
    for (auto v : g().vertices()) {
      const bool sink = lpa::classify_vertex(g(), v) == lpa::VertexKind::sink;
      j["kinds"][g().vertex_name(v)] = sink ? "sink" : "regular";
      out << "  " << g().vertex_name(v) << ": " << (sink ? "sink" : "regular") << "\n";
    }
    j["acyclic"] = g().is_acyclic();
    out << "acyclic: " << (g().is_acyclic() ? "yes" : "no") << "\n";
    emit(o_, j, out.str());
    return exit_ok;
  }

  int nf() {
    lpa::Json all = lpa::Json::array();
    std::string text;
    for (const auto& e : exprs(1)) {
      auto x = lpa::normal_form(element(e));
      all.push_back(lpa::element_to_json(x));
      text += lpa::print_element(x) + "\n";
    }
    emit(o_, all.size() == 1 ? all[0] : all, text);
    return exit_ok;
  }

  int mul() {
    auto e = exprs(2);
    L x = element(e[0]);
    for (std::size_t i = 1; i < e.size(); ++i) x = x * element(e[i]);
    x = lpa::normal_form(x);
    emit(o_, lpa::element_to_json(x), lpa::print_element(x) + "\n");
    return exit_ok;
  }

  int basis() {
    auto report = lpa::basis_enumerate(*cfg_, o_.max_degree);
    lpa::Json j;
    j["max_degree"] = o_.max_degree;
    j["count"] = report.monomials.size();
    j["monomials"] = lpa::Json::array();
    std::ostringstream out;
    for (const auto& m : report.monomials) {
      j["monomials"].push_back(
          {{"real", lpa::path_to_json(g(), m.real)}, {"ghost", lpa::path_to_json(g(), m.ghost)}});
      out << lpa::monomial_to_string(g(), m) << "\n";
    }
    out << "count: " << report.monomials.size() << "\n";
    if (report.dimension) {
      j["dimension"] = *report.dimension;
      j["saturated"] = report.saturated;
      out << "dimension: " << *report.dimension << (report.saturated ? "" : " (not saturated at this bound)")
          << "\n";
    }
    emit(o_, j, out.str());
    return exit_ok;
  }

  int dim() {
    auto longest = lpa::longest_path_length(g());
    if (!longest) {
      emit(o_, {{"dimension", "infinite"}}, "infinite\n");
      return exit_ok;
    }
    auto report = lpa::basis_enumerate(*cfg_, 2 * *longest);
    emit(o_, {{"dimension", *report.dimension}}, std::to_string(*report.dimension) + "\n");
    return exit_ok;
  }

  lpa::Json certificate_json(const lpa::Certificate<F>& c) const {
    lpa::Json pairs = lpa::Json::array();
    for (const auto& [s, b] : c.pairs) {
      pairs.push_back({{"s", lpa::path_to_json(g(), s)}, {"b", lpa::element_to_json(b)}});
    }
    return {{"subject", lpa::element_to_json(c.subject)},
            {"pairs", pairs},
            {"ghost_free", c.ghost_free},
            {"sums_to_one", c.sums_to_one}};
  }

  int cert() {
    auto c = lpa::flat_certificate(element(exprs(1)[0]));
    std::ostringstream out;
    out << "subject: " << lpa::print_element(c.subject) << "\n";
    for (const auto& [s, b] : c.pairs) out << "  s = " << path_text(s) << "    b = " << lpa::print_element(b) << "\n";
    out << "r.s ghost-free: " << (c.ghost_free ? "yes" : "no") << "\n";
    out << "sum s.b = 1: " << (c.sums_to_one ? "yes" : "no") << "\n";
    emit(o_, certificate_json(c), out.str());
    return exit_ok;
  }

  int expand() {
    if (o_.vertex.empty()) throw lpa::InputError("--vertex is required");
    auto rep = lpa::vertex_expansion(element(exprs(1)[0]), g().vertex(o_.vertex));
    lpa::Json pairs = lpa::Json::array();
    std::ostringstream out;
    out << g().vertex_name(rep.vertex) << " = sum of mu.mu^* over:\n";
    for (const auto& [mu, nu] : rep.pairs) {
      pairs.push_back({{"mu", lpa::path_to_json(g(), mu)}, {"nu", lpa::path_to_json(g(), nu)}});
      out << "  " << path_text(mu) << "\n";
    }
    lpa::Json ex = lpa::Json::array();
    out << "exceptional sinks:";
    for (auto u : rep.exceptional) {
      ex.push_back(g().vertex_name(u));
      out << " " << g().vertex_name(u);
    }
    out << "\nN: " << rep.bound << "\n";
    const std::string reading = "sinks u such that no path from the vertex to u contains a closed path";
    out << "note: exceptional sinks read as " << reading << "\n";
    emit(o_,
         {{"vertex", g().vertex_name(rep.vertex)},
          {"pairs", pairs},
          {"exceptional", ex},
          {"N", rep.bound},
          {"exceptional_reading", reading}},
         out.str());
    return exit_ok;
  }

  int dom() {
    auto q = element(exprs(1)[0]);
    const auto l = lpa::dom_degree(q);
    lpa::Json j{{"degree", l}};
    std::string text = "dom degree: " + std::to_string(l) + "\n";
    if (o_.contains) {
      const bool in = lpa::dom_contains(q, quiver(*o_.contains));
      j["contains"] = in;
      text += std::string("contains: ") + (in ? "yes" : "no") + "\n";
    }
    emit(o_, j, text);
    return exit_ok;
  }

  int shrink() {
    auto r = element(exprs(1)[0]);
    auto a = lpa::shrink_to_quiver(r);
    auto ra = lpa::normal_form(r * L::real_path(cfg_, field_, a));
    emit(o_, {{"path", lpa::path_to_json(g(), a)}, {"product", lpa::element_to_json(ra)}},
         "a = " + path_text(a) + "\nr.a = " + lpa::print_element(ra) + "\n");
    return exit_ok;
  }

  int dense() {
    auto e = exprs(2);
    auto beta = lpa::common_shrink(element(e[0]), element(e[1]));
    emit(o_, {{"path", lpa::path_to_json(g(), beta)}}, "beta = " + path_text(beta) + "\n");
    return exit_ok;
  }

  lpa::Json status_json(const lpa::QuotientTable<F>& t) const {
    lpa::Json j;
    j["status"] = t.is_finite() ? "finite-codim" : "exceeded-bound";
    j["bound"] = t.bound();
    if (t.codimension()) {
      j["codimension"] = *t.codimension();
    } else {
      j["codimension"] = nullptr;
    }
    j["provably_infinite"] = t.provably_infinite();
    return j;
  }

  std::string status_text(const lpa::QuotientTable<F>& t) const {
    if (t.codimension()) return "codimension: " + std::to_string(*t.codimension()) + "\n";
    return std::string("codimension: >= bound ") + std::to_string(t.bound()) +
           (t.provably_infinite() ? " (infinite)" : "") + "\n";
  }

  int schreier() {
    auto t = table(exprs(1));
    if (!t->is_finite() && !o_.levels) {
      emit(o_, status_json(*t), status_text(*t) + "Schreier basis needs finite codimension; pass --levels\n");
      return exit_undecided;
    }
    lpa::SchreierBasis<F> B(t, o_.levels);
    lpa::Json j = status_json(*t);
    j["complete"] = B.complete();
    j["levels"] = lpa::Json::array();
    std::ostringstream out;
    out << status_text(*t);
    for (std::size_t n = 0; n < B.levels().size(); ++n) {
      lpa::Json level = lpa::Json::array();
      out << "level " << n << ":";
      for (const auto& p : B.levels()[n]) {
        level.push_back(lpa::path_to_json(g(), p));
        out << " " << path_text(p);
      }
      out << "\n";
      j["levels"].push_back(level);
    }
    if (!B.complete()) out << "(truncated at the level cap)\n";
    emit(o_, j, out.str());
    return B.complete() ? exit_ok : exit_undecided;
  }

  lpa::Json generator_json(const lpa::FreeGenerator<F>& u) const {
    lpa::Json j{{"mu", lpa::path_to_json(g(), u.mu)},
                {"u", lpa::quiver_element_to_json(u.u)},
                {"label", g().vertex_name(u.label)}};
    j["edge"] = u.edge ? lpa::Json(g().edge_name(*u.edge)) : lpa::Json(nullptr);
    return j;
  }

  std::string generator_name(const lpa::FreeGenerator<F>& u) const {
    if (!u.edge) return "u[" + path_text(u.mu) + "]";
    return "u[" + path_text(u.mu) + ", " + g().edge_name(*u.edge) + "]";
  }

  int rank() {
    auto t = table(exprs(1));
    if (!t->is_finite()) {
      emit(o_, status_json(*t), status_text(*t));
      return exit_undecided;
    }
    lpa::SchreierBasis<F> B(t);
    lpa::FreeGeneratorSet<F> gens(B);
    lpa::Json j = status_json(*t);
    j["rank"] = lpa::rank(gens);
    j["generators"] = lpa::Json::array();
    std::ostringstream out;
    out << status_text(*t) << "rank: " << lpa::rank(gens) << "\n";
    for (const auto& u : gens.generators()) {
      j["generators"].push_back(generator_json(u));
      out << "  " << generator_name(u) << " = " << lpa::print_quiver_element(u.u) << "\n";
    }
    if (auto sl = lpa::schreier_lewin_check(gens)) {
      j["schreier_lewin"] = *sl;
      out << "rank = codim*(n-1)+1: " << (*sl ? "yes" : "NO") << "\n";
      if (!*sl) throw lpa::InvariantError("Schreier-Lewin formula violated");
    }
    emit(o_, j, out.str());
    return exit_ok;
  }

  int open() {
    auto t = table(exprs(1));
    auto l = lpa::is_open_adic(*t, o_.l_max);
    if (!l) {
      emit(o_, {{"open", nullptr}, {"l_max", o_.l_max}},
           "no power I^l with l <= " + std::to_string(o_.l_max) + " lies in R\n");
      return exit_undecided;
    }
    emit(o_, {{"open", *l}}, "I^" + std::to_string(*l) + " is contained in R\n");
    return exit_ok;
  }

  int two_sided() {
    auto t = table(exprs(1));
    const bool two = lpa::is_two_sided(*t);
    emit(o_, {{"two_sided", two}}, std::string(two ? "true" : "false") + "\n");
    return exit_ok;
  }

  int express() {
    auto e = exprs(2);
    auto x = quiver(e[0]);
    auto t = table({e.begin() + 1, e.end()});
    if (!t->is_finite()) throw lpa::InputError("ideal is not finite-codimensional within the bound");
    lpa::SchreierBasis<F> B(t);
    lpa::FreeGeneratorSet<F> gens(B);
    auto c = lpa::express_in_free_basis(x, gens);
    lpa::Json terms = lpa::Json::array();
    std::ostringstream out;
    for (const auto& [i, coeff] : c) {
      const auto& u = gens.generators()[i];
      terms.push_back({{"generator", generator_json(u)}, {"coefficient", lpa::quiver_element_to_json(coeff)}});
      out << generator_name(u) << " = " << lpa::print_quiver_element(u.u) << "  ->  "
          << lpa::print_quiver_element(coeff) << "\n";
    }
    emit(o_, {{"expansion", terms}}, out.str());
    return exit_ok;
  }

  int dual() {
    auto ds = lpa::dual_system(generators(exprs(1)), cfg_);
    lpa::Json duals = lpa::Json::array();
    std::ostringstream out;
    for (std::size_t i = 0; i < ds.duals.size(); ++i) {
      duals.push_back(lpa::element_to_json(ds.duals[i]));
      out << "s" << i + 1 << "^* = " << lpa::print_element(ds.duals[i]) << "\n";
    }
    out << "delta identities: " << (ds.delta_ok ? "yes" : "no") << "\n";
    out << "sum s s^* = 1: " << (ds.complete_ok ? "yes" : "no") << "\n";
    emit(o_, {{"duals", duals}, {"delta_ok", ds.delta_ok}, {"complete_ok", ds.complete_ok}}, out.str());
    return exit_ok;
  }

  int codim1() {
    auto p = lpa::codim1_presentation(table(exprs(1)));
    lpa::Json ks = lpa::Json::array();
    lpa::Json rs = lpa::Json::array();
    std::ostringstream out;
    for (std::size_t i = 0; i < p.constants.size(); ++i) {
      ks.push_back(field_.format(p.constants[i]));
      rs.push_back(lpa::quiver_element_to_json(p.generators[i]));
      out << "k" << i + 1 << " = " << field_.format(p.constants[i]) << "    r" << i + 1 << " = "
          << lpa::print_quiver_element(p.generators[i]) << "\n";
    }
    emit(o_, {{"constants", ks}, {"generators", rs}, {"free_basis", p.free_basis_ok}}, out.str());
    return exit_ok;
  }

  int extract() {
    auto a = quiver(exprs(1)[0]);
    auto x = lpa::scalar_extraction(a, cfg_, o_.slack);
    if (!x) {
      emit(o_, {{"found", false}, {"slack", o_.slack}}, "not found within bound\n");
      return exit_undecided;
    }
    emit(o_,
         {{"found", true},
          {"mu", lpa::path_to_json(g(), x->mu)},
          {"nu", lpa::path_to_json(g(), x->nu)},
          {"k", field_.format(x->k)}},
         "mu = " + path_text(x->mu) + ", nu = " + path_text(x->nu) + ", k = " + field_.format(x->k) + "\n");
    return exit_ok;
  }

  int gabriel() {
    auto gens = generators(exprs(1));
    lpa::RightIdealPresentation<F> R(graph_, field_, gens);
    auto w = lpa::gabriel_membership(R, o_.gabriel_bound);
    if (!w) {
      emit(o_, {{"found", false}, {"bound", o_.gabriel_bound}},
           "unknown within bound " + std::to_string(o_.gabriel_bound) + "\n");
      return exit_undecided;
    }
    lpa::Json bs = lpa::Json::array();
    std::ostringstream out;
    out << "found at bound " << w->bound << "\n";
    for (std::size_t i = 0; i < w->b.size(); ++i) {
      bs.push_back(lpa::element_to_json(w->b[i]));
      out << "  b" << i + 1 << " = " << lpa::print_element(w->b[i]) << "\n";
    }
    emit(o_, {{"found", true}, {"bound", w->bound}, {"b", bs}}, out.str());
    return exit_ok;
  }

  const Options& o_;
  F field_;
  lpa::GraphPtr graph_;
  lpa::ConfigPtr cfg_;
};

int module_type(const Options& o) {
  const int modes = (o.codim1 ? 1 : 0) + (o.lm.empty() ? 0 : 1) + (o.family.empty() ? 0 : 1);
  if (modes != 1) throw lpa::InputError("pass exactly one of --codim1, --lm L M, --family PAIRS");
  lpa::ModuleTypeReport r;
  if (o.codim1) {
    r = lpa::module_type_codim1(o.n);
  } else if (!o.lm.empty()) {
    r = lpa::module_type_product(o.lm[0], o.lm[1], o.n);
  } else {
    // PAIRS: "l:m,l:m,..."
    std::vector<std::pair<std::size_t, std::size_t>> family;
    std::stringstream in(o.family);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw lpa::InputError("family entries look like L:M");
      try {
        family.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
      } catch (const std::logic_error&) {
        throw lpa::InputError("malformed family entry '" + item + "'");
      }
    }
    r = lpa::module_type_family(family, o.n);
  }
  lpa::Json j{{"n", r.n}, {"d", r.d}, {"type", r.type_string()}, {"ibn", r.ibn}};
  std::string k0;
  if (r.k0_order) {
    j["k0"] = {{"cyclic_order", *r.k0_order}};
    k0 = "cyclic of order " + std::to_string(*r.k0_order);
  } else {
    j["k0"] = {{"cyclic_order", nullptr}};
    k0 = "infinite cyclic (Laurent polynomial algebra)";
  }
  emit(o, j, r.type_string() + "\nK0: " + k0 + "\n");
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Normal forms, Schreier bases and localization witnesses for Leavitt path algebras"};
  app.require_subcommand(1);

  auto add = [&](const std::string& name, const std::string& help, const std::string& positional,
                 bool graph = true) {
    auto* sub = app.add_subcommand(name, help);
    if (graph) {
      sub->add_option("--graph", o.graph_file, "graph file (line format or JSON)")->required();
      sub->add_option("--field", o.field, "rat or fp:P")->capture_default_str();
      sub->add_flag("--cohn", o.cohn, "work in the Cohn path algebra (CK1 only)");
    }
    sub->add_flag("--json", o.json, "emit JSON");
    if (!positional.empty()) sub->add_option(positional, o.args, "expressions (default: one per stdin line)");
    sub->callback([&o, name] { o.command = name; });
    return sub;
  };

  add("check", "validate a graph file and classify its vertices", "");
  add("nf", "normal form of expressions", "expr");
  add("mul", "normal form of a product", "exprs");
  add("basis", "normal-form basis monomials", "")
      ->add_option("--max-degree", o.max_degree, "bound on |real| + |ghost|")
      ->capture_default_str();
  add("dim", "dimension of L_K(E)", "");
  add("cert", "flat-epimorphism certificate for an element", "expr");
  add("expand", "CK2 vertex expansion for an element", "expr")->add_option("--vertex", o.vertex)->required();
  add("dom", "domain-of-definition degree", "expr")->add_option("--contains", o.contains, "test membership");
  add("shrink", "path a with 0 != r.a in KE", "expr");
  add("dense", "path b with q1.b != 0 and q2.b in KE", "exprs");
  auto* sch = add("schreier", "Schreier basis of a right ideal", "generators");
  sch->add_option("--bound", o.bound, "degree bound for the quotient table")->capture_default_str();
  sch->add_option("--levels", o.levels, "level cap for a partial basis");
  add("rank", "free generators and rank of a right ideal", "generators")
      ->add_option("--bound", o.bound)
      ->capture_default_str();
  add("open", "least l with I^l inside the ideal", "generators")
      ->add_option("--l-max", o.l_max)
      ->capture_default_str();
  add("two-sided", "whether a right ideal is two-sided", "generators");
  add("express", "coefficients of x (first) in the free generators of the ideal (rest)", "exprs");
  add("dual", "dual system of a basis of the arrow ideal", "basis");
  add("codim1", "a_i = r_i + k_i presentation of a codimension-1 ideal", "generators");
  auto* mt = add("module-type", "module type of a localization of L(1,n)", "", false);
  mt->add_flag("--codim1", o.codim1);
  mt->add_option("--lm", o.lm)->expected(2);
  mt->add_option("--family", o.family, "pairs L:M,L:M,...");
  mt->add_option("--n", o.n)->required();
  add("extract", "mu, nu with mu^* a nu = k", "expr")->add_option("--slack", o.slack)->capture_default_str();
  add("gabriel", "search b_i with sum g_i b_i = 1", "generators")
      ->add_option("--bound", o.gabriel_bound)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (o.command == "module-type") return module_type(o);
    auto field = lpa::parse_field(o.field);
    return std::visit([&](const auto& f) { return Runner(o, f).run(); }, field);
  } catch (const lpa::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const lpa::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_invariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_invariant;
  }
}
