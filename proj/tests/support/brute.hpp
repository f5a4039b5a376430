#pragma once

// Brute-force reference implementations for the test suites. They work from
// the face predicate over all vertex subsets and share no code paths with the
// library beyond BasicComplex::contains.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "polyjoin/complex.hpp"
#include "polyjoin/polyhedral_join.hpp"

namespace brute {

using polyjoin::Simplex;
using polyjoin::VertexId;
using FaceSet = std::set<Simplex>;

inline std::vector<Simplex> subsets(const std::vector<VertexId>& vs) {
  std::vector<Simplex> out;
  const std::uint64_t count = std::uint64_t{1} << vs.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Simplex s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if ((bits >> i) & 1U) s.push_back(vs[i]);
    }
    out.push_back(s);
  }
  return out;
}

template <class Complex>
FaceSet face_set(const Complex& k) {
  FaceSet out;
  for (const auto& s : subsets(k.vertices())) {
    if (k.contains(s)) out.insert(s);
  }
  return out;
}

inline FaceSet filter(const std::vector<VertexId>& vs, const std::function<bool(const Simplex&)>& pred) {
  FaceSet out;
  for (const auto& s : subsets(vs)) {
    if (pred(s)) out.insert(s);
  }
  return out;
}

template <class Complex>
std::vector<Simplex> minimal_nonfaces(const Complex& k) {
  std::vector<Simplex> out;
  for (const auto& s : subsets(k.vertices())) {
    if (s.empty() || k.contains(s)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex t = s;
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
      if (!k.contains(t)) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Faces of (K,L)^{*M} straight from the definition: S is a face iff
/// sigma = {i : S_i not in L_i} is in M and S_i is in K_i for i in sigma.
template <class Mask>
FaceSet pjp_faces(const polyjoin::PjpSpec<Mask>& spec) {
  const auto prov = spec.provenance();
  const auto& outer = spec.outer();
  return filter(spec.flat_vertices(), [&](const Simplex& s) {
    std::map<VertexId, Simplex> parts;
    for (VertexId v : s) parts[prov.at(v).outer].push_back(prov.at(v).inner);
    Simplex sigma;
    for (std::size_t i = 0; i < outer.vertex_count(); ++i) {
      const VertexId o = outer.vertices()[i];
      const Simplex si = parts.count(o) ? parts[o] : Simplex{};
      const auto& pair = spec.pairs()[i];
      if (pair.L.contains(si)) continue;
      if (!pair.K.contains(si)) return false;
      sigma.push_back(o);
    }
    return outer.contains(sigma);
  });
}

}  // namespace brute

namespace polyjoin {

// Readable failure messages in GoogleTest assertions.
template <class Mask>
void PrintTo(const BasicComplex<Mask>& k, std::ostream* os) {
  *os << "vertices " << to_string(k.vertices()) << " facets [";
  for (const auto& f : k.facets()) *os << to_string(f);
  *os << "]";
}

}  // namespace polyjoin
