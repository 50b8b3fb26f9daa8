#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lifescope/diffview.hpp"
#include "lifescope/erc20.hpp"
#include "lifescope/features.hpp"
#include "lifescope/lineage.hpp"
#include "lifescope/metrics.hpp"
#include "lifescope/solfront.hpp"
#include "lifescope/textprep.hpp"

namespace py = pybind11;
using namespace lifescope;

namespace {

py::dict check_erc20(const std::string& source) {
  const auto v = erc20::check_source(source);
  py::dict members;
  for (const auto& [name, status] : v.scan.per_member) members[py::str(name)] = std::string(erc20::to_string(status));
  py::dict d;
  d["verdict"] = std::string(erc20::to_string(v.verdict));
  d["appeared_func"] = v.scan.appeared_func;
  d["legal_func"] = v.scan.legal_func;
  d["legal_event"] = v.scan.legal_event;
  d["members"] = members;
  return d;
}

py::list extract_functions(const std::string& source, const std::string& contract,
                           const std::vector<std::string>& deny) {
  sol::ModifierDenyList deny_set(deny.begin(), deny.end());
  py::list out;
  for (const auto& r : sol::extract_functions(source, contract, deny_set)) {
    py::dict d;
    d["contract"] = r.contract;
    d["name"] = r.name;
    d["text"] = r.text;
    d["modifiers"] = r.modifiers;
    d["label"] = r.label;
    out.append(d);
  }
  return out;
}

py::dict compute_metrics(const std::vector<bool>& predicted, const std::vector<double>& scores,
                         const std::vector<bool>& truth) {
  const auto m = ml::compute_metrics(predicted, scores, truth);
  py::dict d;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["f_measure"] = m.f_measure;
  d["accuracy"] = m.accuracy;
  d["auc"] = m.auc;
  d["warnings"] = m.warnings;
  return d;
}

py::list information_gain(const std::vector<std::vector<std::string>>& docs, const std::vector<bool>& labels) {
  py::list out;
  for (const auto& e : features::information_gain(docs, labels)) {
    out.append(py::make_tuple(e.word, e.ig,
                              py::make_tuple(e.counts.word_pos, e.counts.word_neg, e.counts.absent_pos,
                                             e.counts.absent_neg)));
  }
  return out;
}

py::list lcs_diff(const std::string& a, const std::string& b, bool ignore_blank) {
  py::list out;
  for (const auto& h : diff::lcs_diff(a, b, {ignore_blank})) {
    py::list lines;
    for (const auto& l : h.lines) lines.append(py::make_tuple(l.number, l.text));
    out.append(py::make_tuple(std::string(diff::to_string(h.kind)), lines));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the lifescope contract analysis toolkit";

  m.def("check_erc20", &check_erc20, py::arg("source"),
        "Token interface verdict for one Solidity source");
  m.def("extract_functions", &extract_functions, py::arg("source"), py::arg("contract") = "",
        py::arg("deny_modifiers") = std::vector<std::string>{});
  m.def("strip_comments", [](const std::string& s) { return sol::strip_comments(s); }, py::arg("source"));
  m.def("porter_stem", [](const std::string& w) { return text::porter_stem(w); }, py::arg("word"));
  m.def("preprocess", [](const std::string& t) { return text::preprocess(t); }, py::arg("text"));
  m.def("information_gain", &information_gain, py::arg("docs"), py::arg("labels"));
  m.def("keyword_predict",
        [](const std::string& t, std::optional<std::vector<std::string>> keywords) {
          auto rule = keywords ? features::KeywordRule{*keywords} : features::KeywordRule::defaults();
          return features::keyword_predict(std::string_view(t), rule);
        },
        py::arg("text"), py::arg("keywords") = py::none());
  m.def("compute_metrics", &compute_metrics, py::arg("predicted"), py::arg("scores"), py::arg("truth"));
  m.def("similarity",
        [](const std::string& a, const std::string& b, bool normalize) {
          return lineage::source_similarity(a, b, {normalize});
        },
        py::arg("a"), py::arg("b"), py::arg("normalize_identifiers") = false);
  m.def("lcs_diff", &lcs_diff, py::arg("a"), py::arg("b"), py::arg("ignore_blank") = false);
  m.def("render_diff",
        [](const std::string& a, const std::string& b, bool ignore_blank) {
          diff::DiffOptions opts{ignore_blank};
          return diff::render_diff(diff::lcs_diff(a, b, opts), opts);
        },
        py::arg("a"), py::arg("b"), py::arg("ignore_blank") = false);

  py::register_exception<lineage::SimilarityError>(m, "SimilarityError", PyExc_ValueError);
}
