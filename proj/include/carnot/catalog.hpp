#ifndef CARNOT_CATALOG_HPP
#define CARNOT_CATALOG_HPP

#include "carnot/io.hpp"

namespace carnot {

/// Built-in example corpus; every expected block is reproduced bit-exactly by
/// the regression suite running the referenced commands.
struct CatalogEntry {
  std::string name;
  std::string description;
  Json document;
  Json expected;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_find(const std::string& name);

}  // namespace carnot

#endif
