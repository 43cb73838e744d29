#include "hallforge/registry.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>

namespace hallforge::repcat {

std::string to_string(const IsoClassId& id) {
  std::string out = "k";
  for (std::size_t i = 0; i < id.dims.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(id.dims[i]);
  }
  if (id.index > 0) out += "#" + std::to_string(id.index);
  return out;
}

IsoClassId parse_class_id(const std::string& text, std::size_t vertices) {
  if (text.size() < 2 || text[0] != 'k') throw ParseError("bad class id '" + text + "'");
  IsoClassId id;
  const char* p = text.data() + 1;
  const char* end = text.data() + text.size();
  while (true) {
    int value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || value < 0) throw ParseError("bad class id '" + text + "'");
    id.dims.v.push_back(value);
    p = next;
    if (p == end || *p == '#') break;
    if (*p != '.') throw ParseError("bad class id '" + text + "'");
    ++p;
  }
  if (p != end) {
    ++p;
    auto [next, ec] = std::from_chars(p, end, id.index);
    if (ec != std::errc() || next != end) throw ParseError("bad class id '" + text + "'");
  }
  if (id.dims.size() != vertices)
    throw ParseError("class id '" + text + "' has " + std::to_string(id.dims.size()) + " dimensions, expected " +
                     std::to_string(vertices));
  return id;
}

namespace {

struct Layout {
  std::vector<std::size_t> offset;  // first entry of each arrow matrix
  std::size_t entries = 0;
};

Layout layout_of(const Quiver& q, const DimVec& d) {
  Layout l;
  for (const Arrow& a : q.arrows()) {
    l.offset.push_back(l.entries);
    l.entries += static_cast<std::size_t>(d[a.src]) * d[a.dst];
  }
  return l;
}

std::uint32_t primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 1; g < p; ++g) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * g % p);
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 1;
}

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // smaller code stays root
  }
};

// One generator of prod_v GL(d_v): either x_i += x_j (a transvection) or
// x_i *= g at a single vertex.
struct Generator {
  std::size_t vertex;
  std::size_t i;
  std::size_t j;
  bool scaling;
};

}  // namespace

ClassRegistry::ClassRegistry(RepCategory category, Relation relation)
    : category_(std::move(category)), relation_(std::move(relation)) {}

mpz_class ClassRegistry::variety_size(const DimVec& d) const {
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), category_.q(), layout_of(category_.quiver(), d).entries);
  return n;
}

std::uint64_t ClassRegistry::encode(const Rep& m) const {
  std::uint64_t code = 0;
  for (const FieldMatrix& a : m.maps)
    for (falg::Residue e : a.data()) code = code * category_.q() + e;
  return code;
}

Rep ClassRegistry::decode(const DimVec& d, std::uint64_t code) const {
  Rep r = category_.zero_rep(d);
  for (std::size_t ai = r.maps.size(); ai-- > 0;) {
    auto& data = r.maps[ai].data();
    for (std::size_t e = data.size(); e-- > 0;) {
      data[e] = static_cast<falg::Residue>(code % category_.q());
      code /= category_.q();
    }
  }
  return r;
}

std::unique_ptr<VarietyTable> ClassRegistry::build(const DimVec& d) const {
  if (d.size() != category_.quiver().vertex_count() || !d.nonnegative())
    throw IncompatibleObjects("dimension vector " + d.to_string() + " does not fit the quiver");
  const Quiver& quiver = category_.quiver();
  const FieldSpec& f = category_.field();
  const std::uint32_t p = f.p();
  const Layout layout = layout_of(quiver, d);
  const mpz_class size = variety_size(d);
  if (size > category_.limits().max_variety) {
    throw EnumerationTooLarge("max_variety", "dimension vector " + d.to_string() + " has " + size.get_str() +
                                                 " arrow-matrix tuples, above the bound " +
                                                 std::to_string(category_.limits().max_variety));
  }
  const auto n = static_cast<std::uint32_t>(size.get_ui());

  std::vector<Generator> gens;
  for (std::size_t v = 0; v < d.size(); ++v) {
    const auto dv = static_cast<std::size_t>(d[v]);
    for (std::size_t i = 0; i < dv; ++i) {
      for (std::size_t j = 0; j < dv; ++j)
        if (i != j) gens.push_back({v, i, j, false});
    }
    if (dv > 0 && p > 2) gens.push_back({v, 0, 0, true});
  }
  const falg::Residue g = primitive_root(p);
  const falg::Residue g_inv = p > 2 ? f.inv(g) : 1;

  std::vector<bool> valid(n, true);
  if (relation_) {
    for (std::uint32_t c = 0; c < n; ++c) valid[c] = relation_(decode(d, c));
  }

  DisjointSets sets(n);
  std::vector<falg::Residue> digits(layout.entries);
  std::vector<falg::Residue> image(layout.entries);
  auto to_digits = [&](std::uint32_t code) {
    for (std::size_t e = layout.entries; e-- > 0;) {
      digits[e] = code % p;
      code /= p;
    }
  };
  auto to_code = [&](const std::vector<falg::Residue>& ds) {
    std::uint64_t c = 0;
    for (falg::Residue x : ds) c = c * p + x;
    return static_cast<std::uint32_t>(c);
  };

  for (std::uint32_t c = 0; c < n; ++c) {
    if (!valid[c]) continue;
    to_digits(c);
    for (const Generator& gen : gens) {
      image = digits;
      for (std::size_t ai = 0; ai < quiver.arrows().size(); ++ai) {
        const Arrow& a = quiver.arrows()[ai];
        const std::size_t rows = d[a.dst], cols = d[a.src];
        falg::Residue* m = image.data() + layout.offset[ai];
        if (a.dst == gen.vertex) {
          if (gen.scaling) {
            for (std::size_t k = 0; k < cols; ++k) m[gen.i * cols + k] = f.mul(m[gen.i * cols + k], g);
          } else {
            for (std::size_t k = 0; k < cols; ++k)
              m[gen.i * cols + k] = f.add(m[gen.i * cols + k], m[gen.j * cols + k]);
          }
        }
        if (a.src == gen.vertex) {
          if (gen.scaling) {
            for (std::size_t k = 0; k < rows; ++k) m[k * cols + gen.i] = f.mul(m[k * cols + gen.i], g_inv);
          } else {
            for (std::size_t k = 0; k < rows; ++k)
              m[k * cols + gen.j] = f.sub(m[k * cols + gen.j], m[k * cols + gen.i]);
          }
        }
      }
      sets.unite(c, to_code(image));
    }
  }

  mpz_class group = 1;
  for (std::size_t v = 0; v < d.size(); ++v) group *= falg::general_linear_order(d[v], p);

  auto table = std::make_unique<VarietyTable>();
  table->dims = d;
  table->class_of_code.assign(n, -1);
  std::vector<std::uint64_t> orbit;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (!valid[c]) continue;
    const std::uint32_t root = sets.find(c);
    if (root == c) {
      table->class_of_code[c] = static_cast<std::int32_t>(table->classes.size());
      ClassInfo info;
      info.id = IsoClassId{d, static_cast<std::uint32_t>(table->classes.size())};
      info.code = c;
      info.rep = decode(d, c);
      table->classes.push_back(std::move(info));
      orbit.push_back(0);
    } else {
      table->class_of_code[c] = table->class_of_code[root];
    }
    ++orbit[static_cast<std::size_t>(table->class_of_code[c])];
  }
  for (std::size_t k = 0; k < table->classes.size(); ++k) {
    ClassInfo& info = table->classes[k];
    info.orbit_size = mpz_class(static_cast<unsigned long>(orbit[k]));
    if (group % info.orbit_size != 0)
      throw InternalInconsistency("orbit size does not divide the group order for " + to_string(info.id));
    info.aut = group / info.orbit_size;
  }
  return table;
}

const VarietyTable& ClassRegistry::table(const DimVec& d) const {
  {
    std::shared_lock lock(mutex_);
    auto it = tables_.find(d);
    if (it != tables_.end()) return *it->second;
  }
  auto built = build(d);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = tables_.emplace(d, std::move(built));
  return *it->second;
}

const std::vector<ClassInfo>& ClassRegistry::classes(const DimVec& d) const { return table(d).classes; }

const ClassInfo& ClassRegistry::info(const IsoClassId& id) const {
  const auto& list = classes(id.dims);
  if (id.index >= list.size()) throw ParseError("no class " + to_string(id));
  return list[id.index];
}

IsoClassId ClassRegistry::zero_class() const {
  return IsoClassId{DimVec::zeros(category_.quiver().vertex_count()), 0};
}

IsoClassId ClassRegistry::classify(const Rep& m) const {
  category_.check(m);
  const VarietyTable& t = table(m.dims);
  if (!t.class_of_code.empty()) {
    const std::int32_t k = t.class_of_code[encode(m)];
    if (k < 0) throw IncompatibleObjects("representation violates the relations of this category");
    return t.classes[static_cast<std::size_t>(k)].id;
  }
  for (const ClassInfo& info : t.classes)
    if (category_.is_isomorphic(m, info.rep)) return info.id;
  throw InternalInconsistency("no class matches a representation of dims " + m.dims.to_string());
}

void ClassRegistry::import_classes(const DimVec& d, std::vector<ClassInfo> classes) {
  auto table = std::make_unique<VarietyTable>();
  table->dims = d;
  table->classes = std::move(classes);
  std::unique_lock lock(mutex_);
  tables_.emplace(d, std::move(table));
}

std::vector<DimVec> ClassRegistry::covered() const {
  std::shared_lock lock(mutex_);
  std::vector<DimVec> out;
  for (const auto& [d, t] : tables_) out.push_back(d);
  return out;
}

}  // namespace hallforge::repcat
