#include "spd/bands.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "spd/errors.hpp"

namespace spd {

std::string double_repr(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("bad numeric field: '" + s + "'");
  return v;
}

BandTable BandTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open band file: " + path);

  BandTable t;
  bool saw_version = false, saw_hash = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto bad = [&](const std::string& what) {
      return FormatError(path + ":" + std::to_string(lineno) + ": " + what);
    };
    if (key == "version") {
      if (!(ls >> t.version)) throw bad("unreadable version");
      if (t.version != 1) throw bad("unsupported version " + std::to_string(t.version));
      saw_version = true;
    } else if (key == "grid_hash") {
      std::string hex;
      if (!(ls >> hex)) throw bad("unreadable grid_hash");
      auto res = std::from_chars(hex.data(), hex.data() + hex.size(), t.grid_hash, 16);
      if (res.ec != std::errc() || res.ptr != hex.data() + hex.size())
        throw bad("grid_hash is not hex");
      saw_hash = true;
    } else if (key == "band") {
      std::string id, lo, hi;
      if (!(ls >> id >> lo >> hi)) throw bad("band line needs: band <id> <lo> <hi>");
      BandEntry e{parse_double(lo), parse_double(hi)};
      if (!t.bands.emplace(id, e).second) throw bad("duplicate band id: " + id);
    } else {
      throw bad("unknown directive: " + key);
    }
  }
  if (!saw_version) throw FormatError(path + ": missing version line");
  if (!saw_hash) throw FormatError(path + ": missing grid_hash line");
  return t;
}

void BandTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ResourceError("cannot write band file: " + path);
  char hex[17];
  auto res = std::to_chars(hex, hex + sizeof(hex), grid_hash, 16);
  out << "# frozen lhs/rhs ratio bands, one per verified inequality\n"
      << "# regenerate with: spd lemma --all --freeze\n"
      << "version " << version << "\n"
      << "grid_hash " << std::string(hex, res.ptr) << "\n";
  for (const auto& [id, e] : bands)
    out << "band " << id << " " << double_repr(e.lo) << " " << double_repr(e.hi) << "\n";
  if (!out.flush()) throw ResourceError("failed writing band file: " + path);
}

}  // namespace spd
