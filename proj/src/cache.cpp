#include "hallforge/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace hallforge::cache {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string fingerprint(const repcat::Quiver& quiver, std::uint32_t q, int t) {
  const json key{{"quiver", quiver.to_json()}, {"q", q}, {"t", t}};
  return sha256_hex(key.dump());
}

json export_state(const hall::HallEngine& hall, const std::string& fp) {
  const auto& reg = hall.registry();
  json classes = json::array();
  for (const auto& d : reg.covered()) {
    json list = json::array();
    for (const auto& info : reg.classes(d))
      list.push_back(json{{"code", info.code}, {"aut", info.aut.get_str()}, {"orbit", info.orbit_size.get_str()}});
    classes.push_back(json{{"dims", d.v}, {"classes", std::move(list)}});
  }
  json tables = json::array();
  for (const auto& c : hall.tabulated()) {
    json entries = json::array();
    for (const auto& [k, g] : hall.subobject_table(c))
      entries.push_back(json::array({repcat::to_string(k.first), repcat::to_string(k.second), g.get_str()}));
    tables.push_back(json{{"class", repcat::to_string(c)}, {"entries", std::move(entries)}});
  }
  return json{{"fingerprint", fp}, {"classes", std::move(classes)}, {"subobjects", std::move(tables)}};
}

void import_state(repcat::ClassRegistry& reg, hall::HallEngine& hall, const json& state, const std::string& fp) {
  if (!state.is_object() || state.value("fingerprint", "") != fp)
    throw CacheInvalid("cache fingerprint does not match the configuration");
  const std::size_t nv = reg.category().quiver().vertex_count();
  try {
    for (const auto& entry : state.at("classes")) {
      const repcat::DimVec d(entry.at("dims").get<std::vector<int>>());
      if (d.size() != nv || !d.nonnegative()) throw CacheInvalid("cached dimension vector has the wrong shape");
      std::vector<repcat::ClassInfo> infos;
      mpz_class orbits = 0;
      for (const auto& c : entry.at("classes")) {
        repcat::ClassInfo info;
        info.id = {d, static_cast<std::uint32_t>(infos.size())};
        info.code = c.at("code").get<std::uint64_t>();
        info.rep = reg.decode(d, info.code);
        info.aut = mpz_class(c.at("aut").get<std::string>());
        info.orbit_size = mpz_class(c.at("orbit").get<std::string>());
        orbits += info.orbit_size;
        infos.push_back(std::move(info));
      }
      if (infos.empty() || orbits != reg.variety_size(d))
        throw CacheInvalid("cached classes of " + d.to_string() + " do not partition the variety");
      reg.import_classes(d, std::move(infos));
    }
    for (const auto& entry : state.at("subobjects")) {
      const auto c = repcat::parse_class_id(entry.at("class").get<std::string>(), nv);
      hall::SubobjectTable table;
      for (const auto& e : entry.at("entries"))
        table[{repcat::parse_class_id(e.at(0).get<std::string>(), nv),
               repcat::parse_class_id(e.at(1).get<std::string>(), nv)}] = mpz_class(e.at(2).get<std::string>());
      hall.import_subobject_table(c, std::move(table));
    }
  } catch (const CacheInvalid&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheInvalid(std::string("malformed cache: ") + e.what());
  }
}

std::optional<CacheStore> CacheStore::from_env() {
  const char* dir = std::getenv("HALLFORGE_CACHE");
  if (!dir || !*dir) return std::nullopt;
  return CacheStore(dir);
}

fs::path CacheStore::path_for(const std::string& fp) const { return dir_ / (fp + ".json"); }

bool CacheStore::load(repcat::ClassRegistry& reg, hall::HallEngine& hall, const std::string& fp) const {
  const fs::path path = path_for(fp);
  std::ifstream in(path);
  if (!in) return false;
  json state;
  try {
    state = json::parse(in);
  } catch (const json::exception& e) {
    throw CacheInvalid("unreadable cache file " + path.string() + ": " + e.what());
  }
  import_state(reg, hall, state, fp);
  return true;
}

void CacheStore::store(const hall::HallEngine& hall, const std::string& fp) const {
  static std::atomic<unsigned> counter{0};
  fs::create_directories(dir_);
  std::ostringstream tmp_name;
  tmp_name << fp << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter++;
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    out << export_state(hall, fp).dump() << '\n';
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, path_for(fp));
}

}  // namespace hallforge::cache
