// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dataworth/catalog.hpp"

namespace dataworth::detail {

CatalogDocument builtin_canonical_document();
CatalogDocument builtin_examples_extension();

std::string sha256_hex(std::string_view data);
std::string canonical_checksum_of(const std::vector<FacetSpec>& facets,
                                  const std::vector<QuestionSpec>& questions);
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace dataworth::detail
