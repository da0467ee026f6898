#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hahnkit/basis.hpp"
#include "hahnkit/duals.hpp"
#include "hahnkit/io.hpp"
#include "hahnkit/matclass.hpp"
#include "hahnkit/operators.hpp"
#include "hahnkit/spaces.hpp"
#include "hahnkit/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace hahnkit;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
EstimatorConfig config_of(const std::string& cfg) { return io::config_from_json(io::parse_json(cfg, "config")); }

std::string dump(const io::Json& j) { return j.dump(); }

std::string verdict_json(const Verdict& v) { return dump(io::to_json(v)); }

}  // namespace

PYBIND11_MODULE(_hahnkit, m) {
  m.doc() = "Sequence spaces h and h_p: operators, norms, duals and matrix classes";

  // Registered base first: later translators are tried first.
  py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IndexError>(m, "IndexError", PyExc_IndexError);
  py::register_exception<EvalError>(m, "EvalError");
  py::register_exception<DivergenceError>(m, "DivergenceError");

  py::class_<Sequence>(m, "Sequence")
      .def(py::init([](std::vector<double> prefix, const std::string& rule, const std::string& label) {
             TailModel tail = rule.empty() ? TailModel::zero() : TailModel::closed_form(dsl::parse(rule));
             return Sequence(std::move(prefix), std::move(tail), label);
           }),
           "prefix"_a = std::vector<double>{}, "rule"_a = "", "label"_a = "",
           "Prefix values x_1.. followed by a closed-form tail in k (zero when rule is empty).")
      .def_static("from_json", [](const std::string& s) { return io::sequence_from_json(io::parse_json(s)); })
      .def("to_json", [](const Sequence& x) { return dump(io::to_json(x)); })
      .def("eval", &Sequence::eval, "k"_a)
      .def("__call__", &Sequence::eval, "k"_a)
      .def("values", &Sequence::values, "count"_a)
      .def_property_readonly("label", &Sequence::label)
      .def_property_readonly("eventually_zero", &Sequence::eventually_zero)
      .def("__repr__", [](const Sequence& x) { return "<hahnkit.Sequence " + dump(io::to_json(x)) + ">"; });

  py::class_<InfMatrix>(m, "Matrix")
      .def_static("from_json", [](const std::string& s) { return io::matrix_from_json(io::parse_json(s)); })
      .def_static("dense_block", [](Index rows, Index cols, std::vector<double> e) {
        return InfMatrix::dense_block(rows, cols, std::move(e));
      })
      .def_static("named", [](const std::string& id) { return InfMatrix::named(parse_named_matrix(id)); })
      .def("entry", &InfMatrix::entry, "n"_a, "k"_a)
      .def("window", [](const InfMatrix& a, Index rows, Index cols) { return window(a, rows, cols); }, "rows"_a,
           "cols"_a, "Row-major block of the first rows x cols entries.");

  m.def("named_sequence", [](const std::string& name, std::vector<double> params) { return named_sequence(name, params); },
        "name"_a, "params"_a = std::vector<double>{});
  m.def("truncate", [](const Sequence& x, Index n) { return hahnkit::truncate(x, n); }, "x"_a, "n"_a);
  m.def("m_transform", &m_transform, "x"_a);
  m.def("m_inverse", [](const Sequence& y, const std::string& cfg) { return m_inverse(y, config_of(cfg).horizon()); },
        "y"_a, "config"_a = "{}");
  m.def("bar_transform", [](const InfMatrix& a, const std::string& cfg) { return bar_transform(a, config_of(cfg).horizon()); },
        "a"_a, "config"_a = "{}");
  m.def("tilde_transform", &tilde_transform, "a"_a);

  m.def("norm", [](const Sequence& x, const std::string& space, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return dump(io::to_json(norm(x, parse_space(space), c.horizon(), c)));
  }, "x"_a, "space"_a, "config"_a = "{}");
  m.def("member", [](const Sequence& x, const std::string& space, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return verdict_json(member(x, parse_space(space), c.horizon(), c));
  }, "x"_a, "space"_a, "config"_a = "{}");

  m.def("basis_element", &basis_element, "k"_a);
  m.def("expand", [](const Sequence& x, Index order) {
    Expansion e = expand(x, order);
    return py::make_tuple(e.coefficients, e.reconstruction);
  }, "x"_a, "m"_a, "Returns (coefficients, reconstruction).");
  m.def("reconstruction_error", [](const Sequence& x, Index order, double p, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return reconstruction_error(x, order, ExponentPair::from_p(p), c.horizon(), c);
  }, "x"_a, "m"_a, "p"_a = 2.0, "config"_a = "{}");

  m.def("subset_sup", [](std::vector<double> entries, Index rows, Index cols, double q) {
    if (static_cast<Index>(entries.size()) != rows * cols) throw InputError("entries must hold rows * cols values");
    const SubsetSup s = rows <= kExactSubsetRows ? subset_sup_exact(entries, rows, cols, q)
                                                 : subset_sup_greedy(entries, rows, cols, q);
    return py::make_tuple(s.value, s.subset, s.exact);
  }, "entries"_a, "rows"_a, "cols"_a, "q"_a);
  m.def("in_alpha_dual", [](const Sequence& a, const std::string& target, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return verdict_json(in_alpha_dual(a, parse_space(target), c.horizon(), c));
  }, "a"_a, "target"_a, "config"_a = "{}");
  m.def("in_beta_dual_hp", [](const Sequence& a, double p, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return verdict_json(in_beta_dual_hp(a, ExponentPair::from_p(p), c.horizon(), c));
  }, "a"_a, "p"_a, "config"_a = "{}");
  m.def("gamma_dual_hp", [](const Sequence& a, double p, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return verdict_json(gamma_dual_hp(a, ExponentPair::from_p(p), c.horizon(), c));
  }, "a"_a, "p"_a, "config"_a = "{}");
  m.def("in_sigma_inf", [](const Sequence& a, const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return verdict_json(in_sigma_inf(a, c.horizon(), c));
  }, "a"_a, "config"_a = "{}");

  m.def("classify", [](const InfMatrix& a, const std::string& source, const std::string& target, double p,
                       const std::string& cfg) {
    const EstimatorConfig c = config_of(cfg);
    return dump(io::to_json(classify(a, make_class(parse_space(source), parse_space(target), p), c.horizon(), c)));
  }, "a"_a, "source"_a, "target"_a, "p"_a = 2.0, "config"_a = "{}");
  m.def("supported_classes", &supported_classes);

  m.def("verify", [](const std::string& suite, std::uint64_t seed, bool strict, const std::string& cfg) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.strict_paper = strict;
    opt.config = config_of(cfg);
    VerifyReport r;
    {
      py::gil_scoped_release release;
      r = run_suite(suite, opt);
    }
    return dump(to_json(r, false));
  }, "suite"_a = "all", "seed"_a = 42, "strict_paper"_a = false, "config"_a = "{}");
}
