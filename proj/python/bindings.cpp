#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubal/algebra.hpp"
#include "cubal/algebra_io.hpp"
#include "cubal/calculus.hpp"
#include "cubal/models.hpp"
#include "cubal/peirce.hpp"
#include "cubal/sphere_search.hpp"

namespace py = pybind11;
using namespace cubal;

namespace {

py::dict structure_dict(const StructureReport& r) {
  py::dict d;
  d["commutativity"] = r.commutativity;
  d["associativity"] = r.associativity;
  d["self_adjointness"] = r.self_adjointness;
  d["tol"] = r.tol;
  d["pass"] = r.pass();
  return d;
}

}  // namespace

PYBIND11_MODULE(_cubal, m) {
  m.doc() =
      "Commutative metrised algebras of cubic forms: idempotent search, "
      "extremality certificates, Peirce spectra and decompositions.";

  py::class_<BilinearForm>(m, "BilinearForm")
      .def(py::init<Eigen::MatrixXd>(), py::arg("gram"))
      .def_static("identity", &BilinearForm::identity, py::arg("dim"))
      .def_property_readonly("dim", &BilinearForm::dim)
      .def_property_readonly("gram", &BilinearForm::gram);

  py::class_<CubicForm>(m, "CubicForm")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &CubicForm::dim)
      .def("coeff", &CubicForm::coeff, py::arg("i"), py::arg("j"), py::arg("k"))
      .def("set_coeff", &CubicForm::set_coeff, py::arg("i"), py::arg("j"),
           py::arg("k"), py::arg("value"))
      .def("evaluate", &CubicForm::evaluate, py::arg("x"))
      .def("polarize", &CubicForm::polarize, py::arg("x"), py::arg("y"),
           py::arg("z"));

  py::class_<MetrisedAlgebra>(m, "Algebra")
      .def_property_readonly("dim", &MetrisedAlgebra::dim)
      .def_property_readonly(
          "gram", [](const MetrisedAlgebra& a) { return a.form().gram(); })
      .def("multiply", &MetrisedAlgebra::multiply, py::arg("x"), py::arg("y"))
      .def("square", &MetrisedAlgebra::square, py::arg("x"))
      .def("left_mult_matrix", &MetrisedAlgebra::left_mult_matrix, py::arg("x"))
      .def("inner", &MetrisedAlgebra::inner, py::arg("x"), py::arg("y"))
      .def("norm", &MetrisedAlgebra::norm, py::arg("x"))
      .def("check_structure",
           [](const MetrisedAlgebra& a) { return structure_dict(a.check_structure()); })
      .def("is_zero", &MetrisedAlgebra::is_zero, py::arg("tol") = 1e-12);

  m.def("algebra_from_cubic", &algebra_from_cubic, py::arg("cubic"),
        py::arg("form"));
  m.def("cubic_from_algebra", &cubic_from_algebra, py::arg("algebra"));

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &SearchConfig::restarts)
      .def_readwrite("seed", &SearchConfig::seed)
      .def_readwrite("max_iters", &SearchConfig::max_iters)
      .def_readwrite("tol_stat", &SearchConfig::tol_stat)
      .def_readwrite("tol_idem", &SearchConfig::tol_idem)
      .def_readwrite("tol_eig", &SearchConfig::tol_eig)
      .def_readwrite("dedup_radius", &SearchConfig::dedup_radius);

  py::class_<StationaryPoint>(m, "StationaryPoint")
      .def_readonly("x", &StationaryPoint::x)
      .def_readonly("lambda_", &StationaryPoint::lambda)
      .def_readonly("f_value", &StationaryPoint::f_value)
      .def_readonly("residual", &StationaryPoint::residual)
      .def_property_readonly("nil_square",
                             [](const StationaryPoint& p) {
                               return p.kind == StationaryKind::kNilSquare;
                             })
      .def_readonly("global_max_candidate",
                    &StationaryPoint::global_max_candidate);

  py::class_<IdempotentRecord>(m, "IdempotentRecord")
      .def_readonly("c", &IdempotentRecord::c)
      .def_readonly("residual", &IdempotentRecord::residual)
      .def_readonly("f_at_c", &IdempotentRecord::f_at_c)
      .def_readonly("extremal", &IdempotentRecord::extremal)
      .def_readonly("spectrum_on_perp", &IdempotentRecord::spectrum_on_perp)
      .def_readonly("eigenvalue_one_simple",
                    &IdempotentRecord::eigenvalue_one_simple)
      .def_readonly("polished", &IdempotentRecord::polished);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("points", &SearchResult::points)
      .def_readonly("failed_restarts", &SearchResult::failed_restarts)
      .def_readonly("note", &SearchResult::note);

  py::class_<IdempotentSearchResult>(m, "IdempotentSearchResult")
      .def_readonly("idempotents", &IdempotentSearchResult::idempotents)
      .def_readonly("nil_squares", &IdempotentSearchResult::nil_squares)
      .def_readonly("raw", &IdempotentSearchResult::raw);

  m.def("maximize_on_sphere", &maximize_on_sphere, py::arg("algebra"),
        py::arg("cfg") = SearchConfig{});
  m.def("find_idempotents", &find_idempotents, py::arg("algebra"),
        py::arg("cfg") = SearchConfig{});
  m.def("certify_extremal", &certify_extremal, py::arg("algebra"), py::arg("c"),
        py::arg("cfg") = SearchConfig{});

  py::class_<RayleighEval>(m, "RayleighEval")
      .def_readonly("value", &RayleighEval::value)
      .def_readonly("gradient", &RayleighEval::gradient)
      .def_readonly("hessian", &RayleighEval::hessian);

  m.def("grad_u", &grad_u, py::arg("algebra"), py::arg("x"));
  m.def("hess_u", &hess_u, py::arg("algebra"), py::arg("x"));
  m.def("eval_f", &eval_f, py::arg("algebra"), py::arg("x"));
  m.def(
      "fd_check",
      [](const MetrisedAlgebra& algebra, const Eigen::VectorXd& x, double h) {
        const FdReport r = fd_check(algebra, x, h);
        py::dict d;
        d["h"] = r.h;
        d["grad_u_error"] = r.grad_u_error;
        d["hess_u_error"] = r.hess_u_error;
        d["f_grad_error"] = r.f_grad_error;
        d["f_hess_error"] = r.f_hess_error;
        return d;
      },
      py::arg("algebra"), py::arg("x"), py::arg("h") = kFdStep);

  py::class_<EigenCluster>(m, "EigenCluster")
      .def_readonly("value", &EigenCluster::value)
      .def_readonly("multiplicity", &EigenCluster::multiplicity)
      .def_readonly("basis", &EigenCluster::basis);

  py::class_<SubalgebraCheck>(m, "SubalgebraCheck")
      .def_readonly("closed", &SubalgebraCheck::closed)
      .def_readonly("max_residual", &SubalgebraCheck::max_residual)
      .def_readonly("tol", &SubalgebraCheck::tol);

  py::enum_<DecompositionVerdict>(m, "Verdict")
      .value("indecomposable", DecompositionVerdict::kIndecomposable)
      .value("decomposable", DecompositionVerdict::kDecomposable)
      .value("inconclusive", DecompositionVerdict::kInconclusive);

  py::class_<PeirceReport>(m, "PeirceReport")
      .def_readonly("c", &PeirceReport::c)
      .def_readonly("eigenvalues", &PeirceReport::eigenvalues)
      .def_readonly("v1_basis", &PeirceReport::v1_basis)
      .def_readonly("dim_v1", &PeirceReport::dim_v1)
      .def_readonly("v1_is_subalgebra", &PeirceReport::v1_is_subalgebra)
      .def_readonly("subalgebra_residual", &PeirceReport::subalgebra_residual)
      .def_readonly("verdict", &PeirceReport::verdict)
      .def_readonly("decomposition", &PeirceReport::decomposition)
      .def_readonly("c1_residual", &PeirceReport::c1_residual)
      .def_readonly("c2_residual", &PeirceReport::c2_residual)
      .def_readonly("cross_residual", &PeirceReport::cross_residual)
      .def_readonly("diagnostic", &PeirceReport::diagnostic);

  m.def("peirce_spectrum", &peirce_spectrum, py::arg("algebra"), py::arg("c"),
        py::arg("tol_idem") = 1e-8, py::arg("tol_eig") = 1e-6);
  m.def("check_subalgebra", &check_subalgebra, py::arg("algebra"),
        py::arg("basis"), py::arg("tol_sub") = kTolSub);
  m.def("build_restricted_algebra", &build_restricted_algebra,
        py::arg("algebra"), py::arg("basis"));
  m.def("decide_decomposable", &decide_decomposable, py::arg("algebra"),
        py::arg("c"), py::arg("cfg") = SearchConfig{});

  py::class_<UnitSplit>(m, "UnitSplit")
      .def_readonly("unit", &UnitSplit::unit)
      .def_readonly("c_prime", &UnitSplit::c_prime)
      .def_readonly("complement", &UnitSplit::complement)
      .def_readonly("unit_residual", &UnitSplit::unit_residual)
      .def_readonly("c_prime_residual", &UnitSplit::c_prime_residual)
      .def_readonly("complement_residual", &UnitSplit::complement_residual);

  m.def(
      "find_unit",
      [](const MetrisedAlgebra& algebra, double tol_eig) {
        const UnitSearch u = find_unit(algebra, tol_eig);
        return py::make_tuple(u.unit, u.residual);
      },
      py::arg("algebra"), py::arg("tol_eig") = 1e-6);
  m.def(
      "split_unit",
      [](const MetrisedAlgebra& algebra, const SearchConfig& cfg) {
        std::string diagnostic;
        auto split = split_unit(algebra, cfg, &diagnostic);
        return py::make_tuple(split, diagnostic);
      },
      py::arg("algebra"), py::arg("cfg") = SearchConfig{});

  py::class_<OddnessGapReport>(m, "OddnessGapReport")
      .def_readonly("x_plus", &OddnessGapReport::x_plus)
      .def_readonly("x_minus", &OddnessGapReport::x_minus)
      .def_readonly("f_plus", &OddnessGapReport::f_plus)
      .def_readonly("f_minus", &OddnessGapReport::f_minus)
      .def_readonly("pair_distance", &OddnessGapReport::pair_distance)
      .def_readonly("top_pair_anticollinear",
                    &OddnessGapReport::top_pair_anticollinear)
      .def_readonly("odd_symmetry_gap", &OddnessGapReport::odd_symmetry_gap)
      .def_readonly("anticollinear_pair_exists",
                    &OddnessGapReport::anticollinear_pair_exists)
      .def_readonly("maximizers", &OddnessGapReport::maximizers)
      .def_readonly("minimizers", &OddnessGapReport::minimizers);

  m.def("demonstrate_oddness_gap", &demonstrate_oddness_gap, py::arg("algebra"),
        py::arg("cfg") = SearchConfig{});

  m.def("hadamard", &make_hadamard, py::arg("n"));
  m.def("hadamard_idempotents", &hadamard_idempotent_oracle, py::arg("n"));
  m.def(
      "counterexample",
      [](int n, const std::vector<double>& a) {
        CounterexampleParams params;
        if (a.empty()) {
          params = CounterexampleParams::with_defaults(n);
        } else {
          params.n = n;
          params.a = a;
        }
        return make_counterexample(params);
      },
      py::arg("n"), py::arg("a") = std::vector<double>{});
  m.def(
      "counterexample_idempotents",
      [](int n, const std::vector<double>& a) {
        CounterexampleParams params;
        if (a.empty()) {
          params = CounterexampleParams::with_defaults(n);
        } else {
          params.n = n;
          params.a = a;
        }
        return counterexample_oracle(params);
      },
      py::arg("n"), py::arg("a") = std::vector<double>{});
  m.def("random_algebra", &make_random_algebra, py::arg("n"), py::arg("seed"),
        py::arg("scale") = 1.0);

  m.def("parse_algebra",
        [](const std::string& text) { return parse_algebra_file(text).algebra; },
        py::arg("text"));
  m.def("load_algebra",
        [](const std::string& path) { return load_algebra_file(path).algebra; },
        py::arg("path"));
  m.def(
      "emit_algebra",
      [](const MetrisedAlgebra& algebra) {
        return emit_algebra_file(cubic_from_algebra(algebra), algebra.form());
      },
      py::arg("algebra"));

  py::register_exception<ParseError>(m, "ParseError");
}
