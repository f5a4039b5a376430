#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "polyjoin/error.hpp"

namespace polyjoin {

/// Size bounds that keep exponential algorithms at desk scale.
struct Guardrails {
  std::size_t construction_vertices = 64;  ///< flattened vertices of a constructed complex
  std::size_t hochster_vertices = 20;      ///< exhaustive 2^m full-subcomplex enumeration
  std::size_t faces_per_degree = 100000;   ///< chain-group size in homology
  std::size_t isomorphism_vertices = 16;   ///< backtracking isomorphism search

  /// Defaults, with POLYJOIN_GUARDRAIL_VERTICES overriding both vertex bounds.
  static Guardrails from_env() {
    Guardrails g;
    if (const char* env = std::getenv("POLYJOIN_GUARDRAIL_VERTICES"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long value = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        fail(ErrorKind::parse, std::string("POLYJOIN_GUARDRAIL_VERTICES is not a non-negative integer: ") + env);
      }
      g.construction_vertices = static_cast<std::size_t>(value);
      g.hochster_vertices = static_cast<std::size_t>(value);
    }
    return g;
  }
};

}  // namespace polyjoin
