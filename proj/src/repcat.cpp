#include "hallforge/repcat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hallforge::repcat {

int DimVec::total() const noexcept { return std::accumulate(v.begin(), v.end(), 0); }

bool DimVec::nonnegative() const noexcept {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

bool DimVec::fits_in(const DimVec& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (v[i] > other.v[i]) return false;
  return true;
}

DimVec DimVec::operator+(const DimVec& o) const {
  if (size() != o.size()) throw IncompatibleObjects("dimension vectors of different length");
  DimVec r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.v[i] += o.v[i];
  return r;
}

DimVec DimVec::operator-(const DimVec& o) const {
  if (size() != o.size()) throw IncompatibleObjects("dimension vectors of different length");
  DimVec r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.v[i] -= o.v[i];
  return r;
}

std::string DimVec::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

std::vector<DimVec> sub_dimvecs(const DimVec& d) {
  std::vector<DimVec> out;
  DimVec cur = DimVec::zeros(d.size());
  while (true) {
    out.push_back(cur);
    std::size_t k = d.size();
    while (k > 0) {
      --k;
      if (++cur[k] <= d[k]) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (d.size() == 0) return out;
  }
}

std::vector<DimVec> dimvecs_up_to_total(std::size_t vertices, int n) {
  std::vector<DimVec> out;
  DimVec box(std::vector<int>(vertices, n));
  for (const DimVec& d : sub_dimvecs(box))
    if (d.total() <= n) out.push_back(d);
  return out;
}

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (const Arrow& a : arrows_) {
    if (a.src >= vertices_.size() || a.dst >= vertices_.size())
      throw ParseError("arrow '" + a.label + "' references an unknown vertex");
  }
}

std::size_t Quiver::vertex_index(const std::string& label) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end()) throw ParseError("unknown vertex '" + label + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

nlohmann::json Quiver::to_json() const {
  nlohmann::json arrows = nlohmann::json::array();
  for (const Arrow& a : arrows_) {
    arrows.push_back({{"src", vertices_[a.src]}, {"dst", vertices_[a.dst]}, {"label", a.label}});
  }
  return {{"vertices", vertices_}, {"arrows", arrows}};
}

Quiver Quiver::from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    Quiver skeleton(vertices, {});
    std::vector<Arrow> arrows;
    if (j.contains("arrows")) {
      for (const auto& a : j.at("arrows")) {
        Arrow arrow;
        arrow.src = skeleton.vertex_index(a.at("src").get<std::string>());
        arrow.dst = skeleton.vertex_index(a.at("dst").get<std::string>());
        arrow.label = a.value("label", "a" + std::to_string(arrows.size()));
        arrows.push_back(std::move(arrow));
      }
    }
    return Quiver(std::move(vertices), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed quiver JSON: ") + e.what());
  }
}

namespace {

// Iterative DFS; returns a cycle as a vertex list, or empty.
std::vector<std::size_t> find_cycle(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<std::size_t>> out(n);
  for (const Arrow& a : q.arrows()) out[a.src].push_back(a.dst);
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> parent(n, n);
  for (std::size_t root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < out[v].size()) {
        const std::size_t w = out[v][next++];
        if (state[w] == 1) {
          std::vector<std::size_t> cycle{w};
          for (std::size_t x = v; x != w; x = parent[x]) cycle.push_back(x);
          cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

Quiver validate_quiver(const Quiver& q) {
  std::vector<std::size_t> cycle = find_cycle(q);
  if (!cycle.empty()) {
    std::string path;
    for (std::size_t i = 0; i < cycle.size(); ++i) path += (i ? " -> " : "") + q.vertices()[cycle[i]];
    throw NotHereditarySetup("quiver has a directed cycle: " + path);
  }
  return q;
}

std::vector<std::size_t> topological_order(const Quiver& q) {
  validate_quiver(q);
  const std::size_t n = q.vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const Arrow& a : q.arrows()) ++indeg[a.dst];
  std::vector<std::size_t> order;
  std::vector<std::size_t> ready;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    const std::size_t v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (const Arrow& a : q.arrows())
      if (a.src == v && --indeg[a.dst] == 0) ready.push_back(a.dst);
  }
  return order;
}

RepCategory::RepCategory(Quiver quiver, FieldSpec field, Limits limits)
    : quiver_(std::move(quiver)), field_(field), limits_(limits) {}

Rep RepCategory::zero_rep(const DimVec& dims) const {
  if (dims.size() != quiver_.vertex_count())
    throw IncompatibleObjects("dimension vector length does not match the quiver");
  Rep r{dims, {}};
  for (const Arrow& a : quiver_.arrows())
    r.maps.emplace_back(static_cast<std::size_t>(dims[a.dst]), static_cast<std::size_t>(dims[a.src]));
  return r;
}

void RepCategory::check(const Rep& m) const {
  if (m.dims.size() != quiver_.vertex_count() || !m.dims.nonnegative())
    throw IncompatibleObjects("dimension vector does not fit the quiver");
  if (m.maps.size() != quiver_.arrows().size())
    throw IncompatibleObjects("wrong number of arrow maps");
  for (std::size_t i = 0; i < m.maps.size(); ++i) {
    const Arrow& a = quiver_.arrows()[i];
    if (m.maps[i].rows() != static_cast<std::size_t>(m.dims[a.dst]) ||
        m.maps[i].cols() != static_cast<std::size_t>(m.dims[a.src]))
      throw IncompatibleObjects("arrow map '" + a.label + "' has the wrong shape");
  }
}

void RepCategory::check_pair(const Rep& m, const Rep& n) const {
  check(m);
  check(n);
}

FieldMatrix RepCategory::intertwiner_system(const Rep& m, const Rep& n) const {
  // Unknowns: entries of f_v (n_v x m_v), vertex blocks in order, row-major.
  const std::size_t nv = quiver_.vertex_count();
  std::vector<std::size_t> offset(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v)
    offset[v + 1] = offset[v] + static_cast<std::size_t>(n.dims[v]) * m.dims[v];
  std::size_t rows = 0;
  for (const Arrow& a : quiver_.arrows()) rows += static_cast<std::size_t>(n.dims[a.dst]) * m.dims[a.src];

  FieldMatrix sys(rows, offset[nv]);
  std::size_t row = 0;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const Arrow& a = quiver_.arrows()[ai];
    const FieldMatrix& ma = m.maps[ai];
    const FieldMatrix& na = n.maps[ai];
    const std::size_t ms = m.dims[a.src], mt = m.dims[a.dst];
    const std::size_t ns = n.dims[a.src], nt = n.dims[a.dst];
    // (f_t M_a - N_a f_s)(i, j) = 0
    for (std::size_t i = 0; i < nt; ++i) {
      for (std::size_t j = 0; j < ms; ++j, ++row) {
        for (std::size_t k = 0; k < mt; ++k) {
          const std::size_t col = offset[a.dst] + i * mt + k;
          sys(row, col) = field_.add(sys(row, col), ma(k, j));
        }
        for (std::size_t k = 0; k < ns; ++k) {
          const std::size_t col = offset[a.src] + k * ms + j;
          sys(row, col) = field_.sub(sys(row, col), na(i, k));
        }
      }
    }
  }
  return sys;
}

HomSpace RepCategory::hom_basis(const Rep& m, const Rep& n) const {
  check_pair(m, n);
  const FieldMatrix sys = intertwiner_system(m, n);
  const Subspace ker = falg::kernel_basis(field_, sys);
  HomSpace out;
  out.dimension = ker.dim();
  for (std::size_t b = 0; b < ker.dim(); ++b) {
    Morphism f;
    std::size_t pos = 0;
    for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) {
      FieldMatrix fv(n.dims[v], m.dims[v]);
      for (std::size_t e = 0; e < fv.data().size(); ++e) fv.data()[e] = ker.basis(b, pos++);
      f.push_back(std::move(fv));
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

std::size_t RepCategory::hom_dim(const Rep& m, const Rep& n) const {
  check_pair(m, n);
  const FieldMatrix sys = intertwiner_system(m, n);
  return sys.cols() - falg::rank(field_, sys);
}

std::size_t RepCategory::ext1_dim(const Rep& m, const Rep& n) const {
  check_pair(m, n);
  const FieldMatrix sys = intertwiner_system(m, n);
  return sys.rows() - falg::rank(field_, sys);
}

bool RepCategory::is_morphism(const Rep& m, const Rep& n, const Morphism& f) const {
  check_pair(m, n);
  if (f.size() != quiver_.vertex_count()) return false;
  for (std::size_t v = 0; v < f.size(); ++v)
    if (f[v].rows() != static_cast<std::size_t>(n.dims[v]) ||
        f[v].cols() != static_cast<std::size_t>(m.dims[v]))
      return false;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const Arrow& a = quiver_.arrows()[ai];
    if (falg::multiply(field_, f[a.dst], m.maps[ai]) != falg::multiply(field_, n.maps[ai], f[a.src]))
      return false;
  }
  return true;
}

bool RepCategory::is_iso_morphism(const Morphism& f) const {
  return std::all_of(f.begin(), f.end(),
                     [this](const FieldMatrix& fv) { return falg::is_invertible(field_, fv); });
}

void RepCategory::for_each_element(const Rep& m, const Rep& n, const HomSpace& space,
                                   const std::function<bool(const Morphism&)>& visit) const {
  if (space.dimension > limits_.max_hom_dim) {
    throw EnumerationTooLarge("max_hom_dim", "Hom space of dimension " + std::to_string(space.dimension) +
                                                 " exceeds enumeration bound " +
                                                 std::to_string(limits_.max_hom_dim));
  }
  Morphism current;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) current.emplace_back(n.dims[v], m.dims[v]);
  if (!visit(current)) return;
  const std::size_t d = space.dimension;
  if (d == 0) return;
  std::vector<falg::Residue> digits(d, 0);
  // Odometer: incrementing digit k adds basis[k]; a wrap from p-1 to 0 also
  // adds basis[k] once (p copies sum to zero).
  while (true) {
    std::size_t k = d;
    bool done = false;
    while (true) {
      --k;
      for (std::size_t v = 0; v < current.size(); ++v) current[v] = falg::add(field_, current[v], space.basis[k][v]);
      if (++digits[k] < field_.p()) break;
      digits[k] = 0;
      if (k == 0) {
        done = true;
        break;
      }
    }
    if (done) return;
    if (!visit(current)) return;
  }
}

bool RepCategory::is_isomorphic(const Rep& m, const Rep& n) const {
  check_pair(m, n);
  if (m.dims != n.dims) return false;
  if (m == n) return true;
  const std::size_t emm = hom_dim(m, m);
  if (emm != hom_dim(n, n)) return false;
  const HomSpace mn = hom_basis(m, n);
  if (mn.dimension != emm || hom_dim(n, m) != emm) return false;
  bool found = false;
  for_each_element(m, n, mn, [&](const Morphism& f) {
    if (is_iso_morphism(f)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

mpz_class RepCategory::aut_count(const Rep& m) const {
  const HomSpace end = hom_basis(m, m);
  mpz_class count = 0;
  for_each_element(m, m, end, [&](const Morphism& f) {
    if (is_iso_morphism(f)) ++count;
    return true;
  });
  return count;
}

Rep RepCategory::direct_sum(const Rep& m, const Rep& n) const {
  check_pair(m, n);
  Rep s = zero_rep(m.dims + n.dims);
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const FieldMatrix& a = m.maps[ai];
    const FieldMatrix& b = n.maps[ai];
    FieldMatrix& out = s.maps[ai];
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  }
  return s;
}

namespace {

// Columns: U's basis vectors followed by the standard vectors at non-pivot
// positions. Invertible by construction.
FieldMatrix adapted_basis(const Subspace& u) {
  const std::size_t n = u.ambient_dim;
  FieldMatrix b(n, n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < u.dim(); ++i, ++col)
    for (std::size_t r = 0; r < n; ++r) b(r, col) = u.basis(i, r);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t pc : u.pivots) is_pivot[pc] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) b(j, col++) = 1;
  return b;
}

bool maps_into(const falg::FieldSpec& f, const FieldMatrix& map, const Subspace& from, const Subspace& to) {
  for (std::size_t i = 0; i < from.dim(); ++i) {
    std::vector<falg::Residue> image(map.rows(), 0);
    for (std::size_t r = 0; r < map.rows(); ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < map.cols(); ++c) acc += static_cast<std::uint64_t>(map(r, c)) * from.basis(i, c);
      image[r] = static_cast<falg::Residue>(acc % f.p());
    }
    if (!to.contains(f, image)) return false;
  }
  return true;
}

}  // namespace

bool RepCategory::is_subrep(const Rep& c, const std::vector<Subspace>& u) const {
  check(c);
  if (u.size() != quiver_.vertex_count()) return false;
  for (std::size_t v = 0; v < u.size(); ++v)
    if (u[v].ambient_dim != static_cast<std::size_t>(c.dims[v])) return false;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const Arrow& a = quiver_.arrows()[ai];
    if (!maps_into(field_, c.maps[ai], u[a.src], u[a.dst])) return false;
  }
  return true;
}

SubQuotient RepCategory::quotient_by_subrep(const Rep& c, const std::vector<Subspace>& u) const {
  if (!is_subrep(c, u)) throw NotASubobject("subspaces are not closed under the arrow maps");
  const std::size_t nv = quiver_.vertex_count();
  std::vector<FieldMatrix> basis(nv), basis_inv(nv);
  DimVec sub_dims = DimVec::zeros(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    basis[v] = adapted_basis(u[v]);
    basis_inv[v] = falg::inverse(field_, basis[v]);
    sub_dims[v] = static_cast<int>(u[v].dim());
  }
  SubQuotient out{zero_rep(sub_dims), zero_rep(c.dims - sub_dims)};
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const Arrow& a = quiver_.arrows()[ai];
    const FieldMatrix changed =
        falg::multiply(field_, basis_inv[a.dst], falg::multiply(field_, c.maps[ai], basis[a.src]));
    const std::size_t ks = sub_dims[a.src], kt = sub_dims[a.dst];
    const std::size_t ns = c.dims[a.src], nt = c.dims[a.dst];
    out.sub.maps[ai] = changed.block(0, 0, kt, ks);
    out.quot.maps[ai] = changed.block(kt, ks, nt - kt, ns - ks);
  }
  return out;
}

namespace {

const std::vector<Subspace>& cached_subspaces(const falg::FieldSpec& f, std::size_t n, std::size_t d,
                                              const Limits& limits) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, std::unique_ptr<std::vector<Subspace>>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(f.p(), n, d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto list = std::make_unique<std::vector<Subspace>>(falg::enumerate_subspaces(f, n, d, limits));
    it = cache.emplace(key, std::move(list)).first;
  }
  return *it->second;
}

}  // namespace

void RepCategory::for_each_subrep(const Rep& c, const DimVec& e,
                                  const std::function<void(const std::vector<Subspace>&)>& visit) const {
  check(c);
  if (!e.nonnegative() || !e.fits_in(c.dims)) return;
  const std::size_t nv = quiver_.vertex_count();
  std::vector<const std::vector<Subspace>*> choices(nv);
  for (std::size_t v = 0; v < nv; ++v)
    choices[v] = &cached_subspaces(field_, c.dims[v], e[v], limits_);

  // Arrows become checkable once both endpoints are chosen.
  std::vector<std::vector<std::size_t>> ready_at(nv);
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const Arrow& a = quiver_.arrows()[ai];
    ready_at[std::max(a.src, a.dst)].push_back(ai);
  }

  std::vector<Subspace> current(nv);
  std::function<void(std::size_t)> recurse = [&](std::size_t v) {
    if (v == nv) {
      visit(current);
      return;
    }
    for (const Subspace& s : *choices[v]) {
      current[v] = s;
      bool closed = true;
      for (std::size_t ai : ready_at[v]) {
        const Arrow& a = quiver_.arrows()[ai];
        if (!maps_into(field_, c.maps[ai], current[a.src], current[a.dst])) {
          closed = false;
          break;
        }
      }
      if (closed) recurse(v + 1);
    }
  };
  recurse(0);
}

}  // namespace hallforge::repcat
