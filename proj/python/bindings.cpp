#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "cli.hpp"
#include "nonrn/apxhom.hpp"
#include "nonrn/error.hpp"
#include "nonrn/ideal.hpp"
#include "nonrn/index.hpp"
#include "nonrn/linsolve.hpp"
#include "nonrn/serialize.hpp"

namespace py = pybind11;
using namespace nonrn;

namespace {

std::vector<Q1> points_of(const std::vector<std::string>& xs) {
  std::vector<Q1> out;
  for (const auto& x : xs) out.push_back(Q1::parse(x));
  return out;
}

PierceOptions options(std::optional<std::size_t> size_limit, bool heuristic) {
  PierceOptions o;
  if (size_limit) o.exact_limit = *size_limit;
  o.allow_heuristic = heuristic;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact circle-group experiments; values cross the boundary as JSON text.";

  py::register_exception<MalformedInput>(m, "MalformedInput", PyExc_ValueError);
  py::register_exception<MalformedSystem>(m, "MalformedSystem", PyExc_ValueError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);
  py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", PyExc_RuntimeError);

  m.def("q1_add", [](const std::string& x, const std::string& y) {
    return (Q1::parse(x) + Q1::parse(y)).str();
  });
  m.def("enumerate_index", [](std::size_t count) { return to_json(enumerate_index(count)).dump(); },
        py::arg("count"), py::call_guard<py::gil_scoped_release>());
  m.def("from_points", [](const std::vector<std::string>& ys) {
    return to_json(from_points(points_of(ys))).dump();
  });
  m.def("validate", [](const std::string& element) {
    return to_json(validate(parse_index_element(parse_json_text(element)))).dump();
  });
  m.def("eval_f", [](const std::string& element, const std::string& x) {
    return eval_f(parse_index_element(parse_json_text(element)), Q1::parse(x)).str();
  });
  m.def(
      "pierce",
      [](const std::string& elements, std::optional<std::size_t> size_limit, bool heuristic) {
        const auto xs = parse_index_elements(parse_json_text(elements));
        return to_json(pierce_number(xs, options(size_limit, heuristic))).dump();
      },
      py::arg("elements"), py::arg("size_limit") = py::none(), py::arg("heuristic") = false,
      py::call_guard<py::gil_scoped_release>());
  m.def("solve_system", [](const std::string& system) -> std::optional<std::string> {
    const auto sol = solve_torus_system(parse_linear_system(parse_json_text(system)));
    if (!sol) return std::nullopt;
    return to_json(*sol).dump();
  });
  m.def(
      "refute",
      [](const std::string& g, const std::vector<std::string>& samples, std::size_t m_max,
         std::optional<std::vector<std::size_t>> checkpoints, std::optional<std::size_t> size_limit,
         unsigned threads) {
        const auto prefix = enumerate_index(m_max);
        const auto marks = checkpoints ? *checkpoints : geometric_checkpoints(m_max);
        return to_json(refute(MultiplierHom::parse(g), points_of(samples), prefix, marks,
                              options(size_limit, true), threads))
            .dump();
      },
      py::arg("g"), py::arg("samples"), py::arg("m_max"), py::arg("checkpoints") = py::none(),
      py::arg("size_limit") = py::none(), py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
