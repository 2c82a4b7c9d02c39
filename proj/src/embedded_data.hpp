#pragma once

#include <string_view>

// Contents of the data/ tables, compiled in at build time.
namespace catalogue::embedded {

std::string_view language_groups_tsv();
std::string_view gazetteer_tsv();

}  // namespace catalogue::embedded
