// Python face of the library.  Counts are arbitrary-precision, so they cross
// into Python as native ints built from decimal strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "persym/census.hpp"
#include "persym/family.hpp"
#include "persym/formulas.hpp"
#include "persym/verify.hpp"

namespace py = pybind11;
using namespace persym;

namespace {

py::int_ to_py_int(const ExactCount& value) {
  PyObject* obj = PyLong_FromString(value.str().c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

Shape shape_from_arg(const py::object& arg) {
  if (py::isinstance<Shape>(arg)) return arg.cast<Shape>();
  if (py::isinstance<py::str>(arg)) return Shape::parse(arg.cast<std::string>());
  throw py::type_error("expected a Shape or a spec string like '[2,3,3]x10'");
}

py::list hist_to_list(const RankHistogram& hist) {
  py::list out;
  for (const ExactCount& c : hist.counts()) out.append(to_py_int(c));
  return out;
}

std::vector<std::string> matrix_rows(const gf2::BitMatrix& mat) {
  std::vector<std::string> rows;
  rows.reserve(mat.rows());
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    std::string row(mat.cols(), '0');
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      if (mat.get(r, c)) row[c] = '1';
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

gf2::BitMatrix matrix_from_rows(const std::vector<std::string>& rows) {
  return gf2::BitMatrix::from_strings(rows);
}

CensusLimits limits_from_args(std::size_t max_free_bits, bool big) {
  CensusLimits limits;
  limits.max_free_bits = max_free_bits;
  limits.allow_big = big;
  return limits;
}

gf2::BitVector bits_from_str(const std::string& text) {
  gf2::BitVector bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits.set(i, true);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit strings may only contain 0 and 1");
    }
  }
  return bits;
}

std::string bits_to_str(const gf2::BitVector& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.get(i)) out[i] = '1';
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact rank censuses for stacked window-block matrices over GF(2)";

  py::register_exception<CensusRefused>(mod, "CensusRefused", PyExc_RuntimeError);
  py::register_exception<CensusCanceled>(mod, "CensusCanceled", PyExc_RuntimeError);

  py::class_<Shape>(mod, "Shape")
      .def(py::init<std::vector<std::size_t>, std::size_t>(), py::arg("heights"),
           py::arg("k"))
      .def_static("parse", &Shape::parse, py::arg("text"))
      .def_property_readonly("m", &Shape::block_count)
      .def_property_readonly("delta", &Shape::total_rows)
      .def_property_readonly("k", &Shape::cols)
      .def_property_readonly("heights", &Shape::heights)
      .def_property_readonly("free_bits", &Shape::free_bits)
      .def_property_readonly(
          "case", [](const Shape& s) {
            return std::string(family_case_name(s.family_case()));
          })
      .def("__str__", &Shape::to_string)
      .def("__repr__",
           [](const Shape& s) { return "Shape('" + s.to_string() + "')"; })
      .def("__eq__", [](const Shape& a, const Shape& b) { return a == b; })
      .def("__hash__",
           [](const Shape& s) { return py::hash(py::str(s.to_string())); });

  mod.def(
      "conjecture_count",
      [](const py::object& shape) {
        return to_py_int(conjecture_count(shape_from_arg(shape)));
      },
      py::arg("shape"),
      "Conjectured number of full-rank members of the family");

  mod.def(
      "invertible_fraction",
      [](std::size_t m) {
        const ExactFraction f = invertible_fraction(m);
        return py::make_tuple(to_py_int(f.numerator()), to_py_int(f.denominator()));
      },
      py::arg("m"),
      "Reduced (numerator, denominator) of the invertible fraction at delta = k");

  mod.def(
      "count_full_rank_unstructured",
      [](std::size_t m, std::size_t k) {
        return to_py_int(count_full_rank_unstructured(m, k));
      },
      py::arg("m"), py::arg("k"));
  mod.def(
      "count_single_persym",
      [](std::size_t delta, std::size_t k) {
        return to_py_int(count_single_persym(delta, k));
      },
      py::arg("delta"), py::arg("k"));
  mod.def(
      "count_double_persym",
      [](std::size_t delta, std::size_t k) {
        return to_py_int(count_double_persym(delta, k));
      },
      py::arg("delta"), py::arg("k"));
  mod.def(
      "count_triple_persym",
      [](std::size_t delta, std::size_t k) {
        return to_py_int(count_triple_persym(delta, k));
      },
      py::arg("delta"), py::arg("k"));

  mod.def(
      "triple_expansion_report",
      [](std::size_t delta, std::size_t k) {
        const TripleExpansionReport r = triple_expansion_report(delta, k);
        py::dict out;
        out["factored"] = to_py_int(r.factored);
        out["expanded_sum"] = to_py_int(r.expanded_sum);
        out["expanded_factored"] = to_py_int(r.expanded_factored);
        out["sum_matches"] = r.sum_matches;
        out["factored_matches"] = r.factored_matches;
        return out;
      },
      py::arg("delta"), py::arg("k"),
      "Evaluates the two circulated expanded forms of the three-block count "
      "against the factored product");

  mod.def(
      "recursion_count",
      [](const py::object& shape) {
        return to_py_int(recursion_count(shape_from_arg(shape)));
      },
      py::arg("shape"));

  mod.def(
      "materialize",
      [](const py::object& shape, const std::string& bits) {
        return matrix_rows(materialize(shape_from_arg(shape), bits_from_str(bits)));
      },
      py::arg("shape"), py::arg("bits"),
      "Rows of the family member for a parameter bit string, as 0/1 strings");

  mod.def(
      "extract_parameters",
      [](const std::vector<std::string>& rows, const py::object& shape) {
        return bits_to_str(
            extract_parameters(matrix_from_rows(rows), shape_from_arg(shape)));
      },
      py::arg("rows"), py::arg("shape"));

  mod.def("example_shape", &example_shape, py::arg("m"), py::arg("delta"),
          py::arg("k"));

  mod.def(
      "build_example_matrix",
      [](std::size_t m, std::size_t delta, std::size_t k,
         const std::string& bits) {
        return matrix_rows(build_example_matrix(m, delta, k, bits_from_str(bits)));
      },
      py::arg("m"), py::arg("delta"), py::arg("k"), py::arg("bits"));

  mod.def(
      "rearrange_transpose",
      [](const std::vector<std::string>& rows, std::size_t m) {
        return matrix_rows(rearrange_transpose(matrix_from_rows(rows), m));
      },
      py::arg("rows"), py::arg("m"));

  mod.def(
      "rank",
      [](const std::vector<std::string>& rows) {
        return gf2::rank(matrix_from_rows(rows));
      },
      py::arg("rows"), "GF(2) rank of a matrix given as 0/1 row strings");

  mod.def(
      "census",
      [](const py::object& shape, const std::string& engine, std::size_t shards,
         std::size_t workers, std::size_t max_free_bits, bool big) {
        ParallelOptions opts;
        opts.engine = parse_engine(engine);
        opts.shards = shards;
        opts.workers = workers;
        const Shape s = shape_from_arg(shape);
        py::gil_scoped_release release;
        const RankHistogram hist =
            census_parallel(s, opts, limits_from_args(max_free_bits, big));
        py::gil_scoped_acquire acquire;
        return hist_to_list(hist);
      },
      py::arg("shape"), py::arg("engine") = "prefix", py::arg("shards") = 1,
      py::arg("workers") = 1, py::arg("max_free_bits") = 30,
      py::arg("big") = false,
      "Exact rank histogram as a list of counts indexed by rank");

  mod.def(
      "dual_moment_check",
      [](const py::object& shape, const std::vector<py::int_>& counts) {
        const Shape s = shape_from_arg(shape);
        RankHistogram hist(s);
        if (counts.size() != s.total_rows() + 1) {
          throw std::invalid_argument("need delta + 1 counts");
        }
        for (std::size_t r = 0; r < counts.size(); ++r) {
          hist.add(r, ExactCount(py::str(counts[r]).cast<std::string>()));
        }
        return dual_moment_check(s, hist);
      },
      py::arg("shape"), py::arg("counts"));

  mod.def(
      "verify",
      [](const py::object& shape, const std::string& engine, std::size_t shards,
         std::size_t workers, std::size_t max_free_bits, bool big) {
        VerifyOptions opts;
        opts.engine = parse_engine(engine);
        opts.shards = shards;
        opts.workers = workers;
        const Shape s = shape_from_arg(shape);
        const VerdictRecord record = [&] {
          py::gil_scoped_release release;
          return verify_conjecture(s, opts, limits_from_args(max_free_bits, big));
        }();
        py::dict out;
        out["shape"] = record.shape.to_string();
        out["free_bits"] = record.shape.free_bits();
        out["census_count"] = to_py_int(record.census_count);
        out["formula_count"] = to_py_int(record.formula_count);
        out["match"] = record.match;
        out["moment_ok"] = record.moment_ok;
        out["engine"] = record.engine;
        out["elapsed_ms"] = record.elapsed_ms;
        return out;
      },
      py::arg("shape"), py::arg("engine") = "prefix", py::arg("shards") = 1,
      py::arg("workers") = 1, py::arg("max_free_bits") = 30,
      py::arg("big") = false,
      "Census the shape and compare the full-rank count to the formula");
}
