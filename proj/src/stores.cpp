#include "ioch/stores.hpp"

#include "ioch/logmethod.hpp"

namespace ioch {

std::string_view to_string(StructureKind s) {
  switch (s) {
    case StructureKind::Vector: return "vector";
    case StructureKind::Avl: return "avl";
    case StructureKind::Btree: return "btree";
    case StructureKind::LogLinear: return "log-linear";
    case StructureKind::LogBtree: return "log-btree";
    case StructureKind::LogHull: return "log-hull";
  }
  return "unknown";
}

std::optional<StructureKind> parse_structure(std::string_view name) {
  for (StructureKind s : kAllStructures)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

void balanced_delete_range(AvlSequence& tree, std::size_t lo, std::size_t hi) { tree.erase_range(lo, hi); }
void balanced_delete_range(BtreeSequence& tree, std::size_t lo, std::size_t hi) { tree.erase_range(lo, hi); }

std::size_t boundary_size(std::size_t nu, std::size_t nl, const Point& u_first, const Point& u_last,
                          const Point& l_first, const Point& l_last) {
  // Mirrors hull_boundary's de-duplication of shared end points.
  std::size_t hi = nl, lo = 0;
  if (nl > 0 && flip_y(l_last) == u_last) --hi;
  if (hi > 0 && flip_y(l_first) == u_first) lo = 1;
  return nu + (hi > lo ? hi - lo : 0);
}

std::unique_ptr<HullStructure> make_structure(StructureKind s, KernelKind k, const StoreOptions& opts) {
  return with_kernel(k, [&](auto kernel) -> std::unique_ptr<HullStructure> {
    using K = decltype(kernel);
    switch (s) {
      case StructureKind::Vector: return std::make_unique<ChainStore<K, VectorChain>>(s, opts);
      case StructureKind::Avl: return std::make_unique<ChainStore<K, AvlSequence>>(s, opts);
      case StructureKind::Btree: return std::make_unique<ChainStore<K, BtreeSequence>>(s, opts);
      case StructureKind::LogLinear:
        return std::make_unique<LogStructure<K, VectorChain>>(s, LogVariant::Linear, opts);
      case StructureKind::LogBtree:
        return std::make_unique<LogStructure<K, BtreeSequence>>(s, LogVariant::Btree, opts);
      case StructureKind::LogHull:
        return std::make_unique<LogStructure<K, VectorChain>>(s, LogVariant::Hull, opts);
    }
    throw ContractError("unknown structure");
  });
}

}  // namespace ioch
