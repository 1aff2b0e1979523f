#include "hilbertlab/error.hpp"
#include "hilbertlab/parallel.hpp"
#include "hilbertlab/simplex.hpp"

#include <cstdint>

namespace hilbertlab {
namespace {

// Independence is screened modulo a 61-bit prime; recorded sets are revalidated exactly.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::vector<std::uint64_t> reduce_mod_p(const Vector& v) {
  const Vector prim = linalg::primitive(v);
  std::vector<std::uint64_t> out;
  const Integer p(kPrime);
  for (const auto& x : prim) {
    Integer r = boost::multiprecision::numerator(x) % p;
    if (r < 0) r += p;
    out.push_back(r.convert_to<std::uint64_t>());
  }
  return out;
}

struct ModEchelon {
  std::vector<std::vector<std::uint64_t>> rows;  // each normalized to leading 1
  std::vector<std::size_t> pivots;

  /// Adds v if independent; returns false otherwise.
  bool insert(std::vector<std::uint64_t> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::uint64_t f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = (v[c] + kPrime - mulmod(f, rows[r][c])) % kPrime;
    }
    std::size_t pc = 0;
    while (pc < v.size() && v[pc] == 0) ++pc;
    if (pc == v.size()) return false;
    const std::uint64_t inv = powmod(v[pc], kPrime - 2);
    for (auto& x : v) x = mulmod(x, inv);
    // Keep rows reduced at the new pivot so later reductions stay single-pass.
    for (auto& row : rows) {
      const std::uint64_t f = row[pc];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) row[c] = (row[c] + kPrime - mulmod(f, v[c])) % kPrime;
    }
    rows.push_back(std::move(v));
    pivots.push_back(pc);
    return true;
  }
};

struct Candidate {
  VertexMask mask;
  Vector point;
  std::vector<std::uint64_t> residues;
};

struct Search {
  const PolytopeDomain& domain;
  const std::vector<Candidate>& cands;
  std::size_t max_size;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::vector<std::size_t>> found;

  void count() {
    if (++nodes > budget) fail(ErrorKind::BudgetExceeded, "enumeration node budget exhausted");
  }

  bool faces_in_boundary(const std::vector<std::size_t>& set) const {
    for (std::size_t skip = 0; skip < set.size(); ++skip) {
      VertexMask u = 0;
      for (std::size_t i = 0; i < set.size(); ++i)
        if (i != skip) u |= cands[set[i]].mask;
      if (!domain.in_common_facet(u)) return false;
    }
    return true;
  }

  // A member whose face lies in the closed face spanned by the others can never leave a boundary
  // drop-one face while the full union turns interior; adding members keeps it that way.
  bool irredundant(const std::vector<std::size_t>& set) const {
    for (std::size_t skip = 0; skip < set.size(); ++skip) {
      VertexMask u = 0;
      for (std::size_t i = 0; i < set.size(); ++i)
        if (i != skip) u |= cands[set[i]].mask;
      if ((cands[set[skip]].mask & ~domain.face_closure(u)) == 0) return false;
    }
    return true;
  }

  void dfs(std::vector<std::size_t>& chosen, VertexMask u, const ModEchelon& ech) {
    for (std::size_t j = chosen.back() + 1; j < cands.size(); ++j) {
      ModEchelon next = ech;
      if (!next.insert(cands[j].residues)) continue;
      const VertexMask u2 = u | cands[j].mask;
      chosen.push_back(j);
      count();
      if (irredundant(chosen)) {
        if (!domain.in_common_facet(u2)) {
          if (faces_in_boundary(chosen)) found.push_back(chosen);
        } else if (chosen.size() < max_size) {
          dfs(chosen, u2, next);
        }
      }
      chosen.pop_back();
    }
  }
};

}  // namespace

bool dominated_by(const EmbeddedSimplex& s, const EmbeddedSimplex& t) {
  if (t.dim() <= s.dim() || s.domain_ptr() != t.domain_ptr()) return false;
  const auto& dom = s.domain();
  Matrix slid;
  for (VertexMask face : s.vertex_faces()) {
    VertexMask u = 0;
    Vector w(dom.ambient_dim(), Rational(0));
    bool any = false;
    for (std::size_t i = 0; i < t.vertices().size(); ++i) {
      const VertexMask f = t.vertex_faces()[i];
      if ((f & ~face) != 0) continue;
      any = true;
      u |= f;
      for (std::size_t c = 0; c < w.size(); ++c) w[c] += t.lifts()[i][c];
    }
    if (!any || dom.face_closure(u) != face) return false;
    slid.push_back(std::move(w));
  }
  return linalg::rank(slid) == slid.size();
}

SimplexFamily enumerate_max_simplices(const DomainPtr& domain, const EnumerationOptions& options) {
  SimplexFamily family;
  const auto faces = domain->face_lattice();
  family.candidates = faces.size();
  if (faces.size() > options.max_candidates)
    fail(ErrorKind::BudgetExceeded, std::to_string(faces.size()) + " candidates exceed the limit of " +
                                        std::to_string(options.max_candidates));
  std::vector<Candidate> cands;
  for (VertexMask f : faces) {
    Vector b = domain->barycenter(f);
    auto res = reduce_mod_p(b);
    cands.push_back({f, std::move(b), std::move(res)});
  }
  std::size_t max_size = domain->span().dim();
  if (options.max_dim) max_size = std::min(max_size, *options.max_dim + 1);

  std::vector<std::vector<std::vector<std::size_t>>> per_first(cands.size());
  std::vector<std::size_t> nodes(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t i) {
    Search search{*domain, cands, max_size, options.node_budget, 0, {}};
    ModEchelon ech;
    ech.insert(cands[i].residues);
    std::vector<std::size_t> chosen{i};
    if (max_size > 1) search.dfs(chosen, cands[i].mask, ech);
    per_first[i] = std::move(search.found);
    nodes[i] = search.nodes;
  });

  std::vector<EmbeddedSimplex> all;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    family.nodes += nodes[i];
    for (const auto& set : per_first[i]) {
      std::vector<HPoint> verts;
      for (auto c : set) verts.emplace_back(cands[c].point);
      try {
        all.push_back(EmbeddedSimplex::recognize(domain, std::move(verts)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DependentVertices) throw;
      }
    }
  }
  family.found = all.size();
  std::vector<char> keep(all.size(), 1);
  parallel_for(all.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != i && dominated_by(all[i], all[j])) {
        keep[i] = 0;
        return;
      }
    }
  });
  for (std::size_t i = 0; i < all.size(); ++i)
    if (keep[i]) family.members.push_back(std::move(all[i]));
  return family;
}

}  // namespace hilbertlab
