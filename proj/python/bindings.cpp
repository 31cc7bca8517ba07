#include "weil/criteria.hpp"
#include "weil/error.hpp"
#include "weil/forge.hpp"
#include "weil/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace weil;

namespace {

OracleOptions options(unsigned precision, const std::string& tolerance) {
    OracleOptions opt;
    opt.precision = precision;
    opt.tolerance = parse_decimal(tolerance);
    return opt;
}

std::string classify_document(const std::string& text, unsigned threads, bool oracle, unsigned precision,
                              const std::string& tolerance) {
    const AbelianVarietyDatum datum = parse_datum_text(text);
    const ClassificationReport report = classify(datum, threads);
    Json doc = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                {"input_sha256", sha256_hex(text)},
                {"report", report_to_json(report)}};
    if (oracle) {
        doc["oracle"] = oracle_crosscheck(datum, report, options(precision, tolerance));
        doc["oracle_settings"] = {{"precision", precision}, {"tolerance", tolerance}};
    }
    return canonical_dump(doc);
}

std::vector<std::pair<std::string, std::string>> validate_document(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : validate(parse_datum_text(text)).violations) out.emplace_back(v.path, v.message);
    return out;
}

std::string run_oracle(const std::string& which, const std::string& text, unsigned precision,
                       const std::string& tolerance) {
    const AbelianVarietyDatum datum = parse_datum_text(text);
    const OracleOptions opt = options(precision, tolerance);
    if (which == "wedge") return canonical_dump(wedge_oracle(datum, opt));
    if (which == "hodge-type") return canonical_dump(hodge_type_oracle_report(datum, opt));
    if (which == "witness") return canonical_dump(witness_oracle(datum, opt));
    throw Error(ErrorKind::InvalidInput, "unknown oracle '" + which + "'");
}

std::pair<bool, std::optional<size_t>> hodge(const std::vector<long>& n, const std::vector<size_t>& conjugate) {
    const HodgeVerdict v = hodge_test(n, conjugate);
    return {v.all_hodge, v.witness};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weil class classification on abelian varieties";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "WeilError", PyExc_ValueError);

    m.def("fixture_names", &fixture_names, "Names accepted by example()");
    m.def(
        "example", [](const std::string& name, uint64_t seed) { return canonical_dump(datum_to_json(make_fixture(name, seed).datum)); },
        py::arg("name"), py::arg("seed") = 0, "Input document of a built-in example");
    m.def("classify", &classify_document, py::arg("document"), py::arg("threads") = 1, py::arg("oracle") = false,
          py::arg("precision") = 50, py::arg("tolerance") = "1e-8",
          "Canonical JSON report for an input document", py::call_guard<py::gil_scoped_release>());
    m.def("validate", &validate_document, py::arg("document"), "List of (path, message) violations");
    m.def("oracle", &run_oracle, py::arg("which"), py::arg("document"), py::arg("precision") = 50,
          py::arg("tolerance") = "1e-8", "Run the wedge, hodge-type or witness oracle",
          py::call_guard<py::gil_scoped_release>());
    m.def("hodge_test", &hodge, py::arg("multiplicities"), py::arg("conjugate"),
          "(all_hodge, first sigma with n_sigma != n_sigma')");
    m.def("sha256", [](const std::string& s) { return sha256_hex(s); });
}
