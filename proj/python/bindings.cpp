// Python module mjdef_py: string-level access to deficiency, discard values
// and KB-blocks. Invalid input raises ValueError.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "mjdef/block.hpp"
#include "mjdef/completeness.hpp"
#include "mjdef/decision.hpp"

namespace py = pybind11;

namespace {

// "complement" means every tile not held by the hand.
std::pair<mjdef::Hand, mjdef::KnowledgeBase> load(const std::string& hand_text, const std::string& kb_text) {
  const mjdef::Hand hand = mjdef::parse_hand(hand_text);
  const mjdef::KnowledgeBase kb = kb_text == "complement" ? mjdef::kb_from_hand(hand) : mjdef::parse_kb(kb_text);
  mjdef::require_compatible(hand, kb);
  return {hand, kb};
}

int deficiency(const std::string& hand, const std::string& kb, const std::string& algo, int cap) {
  const auto [h, k] = load(hand, kb);
  return mjdef::deficiency(h, k, mjdef::parse_backend(algo), cap);
}

py::dict discard(const std::string& hand, const std::string& kb, const std::string& algo, int cap) {
  const auto [h, k] = load(hand, kb);
  const mjdef::DiscardReport r = mjdef::discard_values(h, k, mjdef::parse_backend(algo), cap);
  py::dict values;
  for (const auto& [t, v] : r.values) values[py::str(mjdef::to_string(t))] = v;
  py::dict out;
  out["dfncy"] = r.dfncy;
  out["values"] = values;
  out["chosen"] = r.chosen ? py::object(py::str(mjdef::to_string(*r.chosen))) : py::object(py::none());
  return out;
}

std::vector<std::string> blocks(const std::string& hand, const std::string& kb) {
  const auto [h, k] = load(hand, kb);
  std::vector<std::string> out;
  for (const mjdef::Block& b : mjdef::kb_blocks(h, k)) out.push_back(mjdef::to_string(b));
  return out;
}

}  // namespace

PYBIND11_MODULE(mjdef_py, m) {
  m.doc() = "Knowledge-aware deficiency of mahjong hands";
  m.attr("INCOMPLETABLE") = mjdef::kIncompletable;
  m.def("deficiency", &deficiency, py::arg("hand"), py::arg("kb") = "complement", py::arg("algo") = "block",
        py::arg("cap") = 4, "Deficiency of the hand given the KB (INCOMPLETABLE if none).");
  m.def("discard", &discard, py::arg("hand"), py::arg("kb") = "complement", py::arg("algo") = "block",
        py::arg("cap") = 4, "Discard values per distinct tile and the recommended discard.");
  m.def("blocks", &blocks, py::arg("hand"), py::arg("kb") = "complement", "KB-blocks of the hand.");
  m.def(
      "is_complete", [](const std::string& hand) { return mjdef::is_complete(mjdef::parse_hand(hand)); },
      py::arg("hand"));
}
