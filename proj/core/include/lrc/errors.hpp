#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

// Thrown when an operation would exceed its configured compute budget.
struct resource_limit_error : std::runtime_error {
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a constructive search exhausts its options without a result.
struct search_failed_error : std::runtime_error {
  explicit search_failed_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrc
