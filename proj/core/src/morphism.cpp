#include "gentle/morphism.hpp"

#include <json.hpp>

#include <stdexcept>

namespace gentle {

std::string variant_name(MorphVariant v) {
  switch (v) {
    case MorphVariant::Graph: return "graph";
    case MorphVariant::QuasiRep: return "quasi-representative";
    case MorphVariant::SingletonSingle: return "singleton-single";
    case MorphVariant::SingletonDouble: return "singleton-double";
    case MorphVariant::Single: return "single";
    case MorphVariant::Double: return "double";
  }
  return "?";
}

bool BasisMorphism::realizable() const {
  if (infinite_left || infinite_right) return false;
  for (const auto& c : components)
    if (c.src_slot < 0 || c.tgt_slot < 0) return false;
  return true;
}

MapMatrices BasisMorphism::realize() const {
  if (!realizable())
    throw std::invalid_argument("morphisms involving infinite words are not realised");
  MapMatrices f;
  for (const auto& c : components) f[c.degree].push_back({c.src_slot, c.tgt_slot, c.scalar, c.path});
  return f;
}

bool is_isomorphism_map(const BasisMorphism& f, const ProjComplex& C, const ProjComplex& D) {
  if (f.variant != MorphVariant::Graph) return false;
  if (f.infinite_left || f.infinite_right) return false;
  for (const auto& c : f.components)
    if (!c.iso()) return false;
  return static_cast<int>(f.components.size()) == C.slot_count() &&
         C.slot_count() == D.slot_count();
}

std::string morphism_to_json(const GentleAlgebra& A, const BasisMorphism& f) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["variant"] = variant_name(f.variant);
  auto comp_json = [&](const MorphComponent& c) {
    return nlohmann::json{{"degree", c.degree},
                          {"srcSlot", c.src_slot},
                          {"tgtSlot", c.tgt_slot},
                          {"scalar", rat_to_string(c.scalar)},
                          {"path", A.path_label(c.path)}};
  };
  auto comps = nlohmann::json::array();
  for (const auto& c : f.components) comps.push_back(comp_json(c));
  j["components"] = comps;
  if (f.infinite_left) j["infiniteLeft"] = true;
  if (f.infinite_right) j["infiniteRight"] = true;
  if (!f.rep_chain.empty()) {
    auto chain = nlohmann::json::array();
    for (const auto& rep : f.rep_chain) {
      auto r = nlohmann::json::array();
      for (const auto& c : rep) r.push_back(comp_json(c));
      chain.push_back(r);
    }
    j["representatives"] = chain;
    j["cyclic"] = f.rep_cyclic;
  }
  return j.dump(2);
}

}  // namespace gentle
