#include "affinv/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace affinv {

InputError::InputError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

struct Line {
  int number = 0;
  std::string keyword;
  std::string rest;  // text after the keyword, trimmed
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    std::string_view raw = text.substr(pos, nl - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) {
      Line l;
      l.number = number;
      std::size_t sp = 0;
      while (sp < t.size() && !std::isspace(static_cast<unsigned char>(t[sp]))) ++sp;
      l.keyword = t.substr(0, sp);
      l.rest = trim(std::string_view(t).substr(sp));
      out.push_back(std::move(l));
    }
    pos = nl + 1;
  }
  return out;
}

// Reads `count` 1-based indices from the front of the line, then the
// expression from the remainder.
void read_entry(const Line& line, int count, int dim, Index& idx, Expr& value) {
  std::string_view rest = line.rest;
  std::size_t pos = 0;
  for (int s = 0; s < count; ++s) {
    while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) ++pos;
    if (start == pos) throw InputError("'" + line.keyword + "' expects " + std::to_string(count) + " indices", line.number);
    const int v = std::stoi(std::string(rest.substr(start, pos - start)));
    if (v < 1 || v > dim) throw InputError("index " + std::to_string(v) + " out of range 1.." + std::to_string(dim), line.number);
    idx[s] = v - 1;
    if (pos < rest.size() && !std::isspace(static_cast<unsigned char>(rest[pos])))
      throw InputError("malformed index", line.number);
  }
  const std::string expr_text = trim(rest.substr(pos));
  if (expr_text.empty()) throw InputError("missing expression", line.number);
  try {
    value = parse_expr(expr_text, dim);
  } catch (const ParseError& e) {
    throw InputError(std::string("expression: ") + e.what(), line.number);
  } catch (const std::domain_error& e) {
    throw InputError(std::string("expression: ") + e.what(), line.number);
  }
}

std::string index_text(const Index& idx, int count) {
  std::string s;
  for (int k = 0; k < count; ++k) s += (k ? " " : "") + std::to_string(idx[k] + 1);
  return s;
}

void print_block(std::ostringstream& os, const std::string& keyword, const TensorField& t) {
  bool any = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.flat(k).is_zero()) continue;
    any = true;
    os << keyword << ' ' << index_text(t.unflatten(k), t.rank()) << ' ' << t.flat(k).to_string() << '\n';
  }
  if (!any) os << keyword << '\n';
}

struct BlockShape {
  int up;
  int down;
};

const std::map<std::string, BlockShape>& mapping_blocks() {
  static const std::map<std::string, BlockShape> blocks = {
      {"psi", {0, 1}},   {"rho", {0, 1}},     {"sigma", {1, 2}}, {"tau", {1, 2}},
      {"tau_bar", {1, 2}}, {"a", {0, 2}},      {"P", {1, 2}},
  };
  return blocks;
}

}  // namespace

SpaceFile parse_space(std::string_view text) {
  const auto lines = split_lines(text);
  SpaceFile f;
  std::size_t k = 0;
  if (k >= lines.size() || lines[k].keyword != "dim") throw InputError("space file must start with 'dim N'", lines.empty() ? 0 : lines[0].number);
  try {
    std::size_t used = 0;
    f.dim = std::stoi(lines[k].rest, &used);
    if (used != lines[k].rest.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw InputError("malformed dimension", lines[k].number);
  }
  if (f.dim < 1 || f.dim > kMaxVars) throw InputError("dimension must be in 1.." + std::to_string(kMaxVars), lines[k].number);
  ++k;
  if (k >= lines.size() || lines[k].keyword != "coord") throw InputError("expected 'coord x1 ... xN'", k < lines.size() ? lines[k].number : 0);
  {
    std::istringstream is(lines[k].rest);
    std::string name;
    int count = 0;
    while (is >> name) {
      if (name != "x" + std::to_string(count + 1)) throw InputError("coordinates must be named x1..xN in order", lines[k].number);
      ++count;
    }
    if (count != f.dim) throw InputError("coordinate count differs from dim", lines[k].number);
  }
  ++k;
  if (k >= lines.size() || (lines[k].keyword != "metric" && lines[k].keyword != "connection") || !lines[k].rest.empty())
    throw InputError("expected 'metric' or 'connection'", k < lines.size() ? lines[k].number : 0);
  f.block = lines[k].keyword == "metric" ? SpaceFile::Block::metric : SpaceFile::Block::connection;
  const int count = f.block == SpaceFile::Block::metric ? 2 : 3;
  f.entries = f.block == SpaceFile::Block::metric ? TensorField(f.dim, 0, 2) : TensorField(f.dim, 1, 2);
  std::vector<char> seen(f.entries.size(), 0);
  ++k;
  for (; k < lines.size(); ++k) {
    const Line& l = lines[k];
    // Entry lines start with an index, so the "keyword" is the first index.
    Line entry;
    entry.number = l.number;
    entry.keyword = "entry";
    entry.rest = l.keyword + " " + l.rest;
    Index idx{};
    Expr value;
    read_entry(entry, count, f.dim, idx, value);
    const std::size_t flat = f.entries.flatten(idx);
    if (seen[flat]) throw InputError("duplicate entry", l.number);
    seen[flat] = 1;
    f.entries.set(idx, value);
  }
  return f;
}

std::string print_space(const SpaceFile& f) {
  std::ostringstream os;
  os << "dim " << f.dim << '\n' << "coord";
  for (int i = 1; i <= f.dim; ++i) os << " x" << i;
  os << '\n' << (f.block == SpaceFile::Block::metric ? "metric" : "connection") << '\n';
  for (std::size_t k = 0; k < f.entries.size(); ++k) {
    if (f.entries.flat(k).is_zero()) continue;
    os << index_text(f.entries.unflatten(k), f.entries.rank()) << ' ' << f.entries.flat(k).to_string() << '\n';
  }
  return os.str();
}

ConnectionSpace space_connection(const SpaceFile& f) {
  if (f.block == SpaceFile::Block::metric) return generalized_christoffel(GeneralizedMetric(f.entries));
  return ConnectionSpace(f.entries);
}

MappingSpec parse_mapping(std::string_view text, int dim) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].keyword != "mapping") throw InputError("mapping file must start with 'mapping <kind>'", lines.empty() ? 0 : lines[0].number);
  const auto kind = parse_kind(lines[0].rest);
  if (!kind) throw InputError("unknown mapping kind '" + lines[0].rest + "'", lines[0].number);

  std::map<std::string, std::vector<std::string>> allowed = {
      {"geodesic", {"psi"}},
      {"second-class", {"rho", "sigma", "tau", "tau_bar"}},
      {"general", {"P", "tau", "tau_bar"}},
      {"almost-geodesic-pi1", {"a", "P"}},
  };
  const auto& ok = allowed.at(kind_name(*kind));
  std::map<std::string, TensorField> blocks;
  std::map<std::string, std::vector<char>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const auto shape = mapping_blocks().find(l.keyword);
    if (shape == mapping_blocks().end()) throw InputError("unknown keyword '" + l.keyword + "'", l.number);
    if (std::find(ok.begin(), ok.end(), l.keyword) == ok.end())
      throw InputError("'" + l.keyword + "' is not used by " + kind_name(*kind) + " mappings", l.number);
    auto [it, fresh] = blocks.try_emplace(l.keyword, dim, shape->second.up, shape->second.down);
    if (fresh) seen[l.keyword].assign(it->second.size(), 0);
    if (l.rest.empty()) continue;  // block declared, entries zero
    Index idx{};
    Expr value;
    read_entry(l, shape->second.up + shape->second.down, dim, idx, value);
    const std::size_t flat = it->second.flatten(idx);
    if (seen[l.keyword][flat]) throw InputError("duplicate '" + l.keyword + "' entry", l.number);
    seen[l.keyword][flat] = 1;
    it->second.set(idx, value);
  }
  auto require = [&](const std::string& name) -> TensorField {
    auto it = blocks.find(name);
    if (it == blocks.end()) throw InputError(kind_name(*kind) + " mapping requires a '" + name + "' block", 0);
    return it->second;
  };
  auto optional = [&](const std::string& name) -> std::optional<TensorField> {
    auto it = blocks.find(name);
    if (it == blocks.end()) return std::nullopt;
    return it->second;
  };
  auto check_sym = [](const TensorField& t, int a, int b, const std::string& name) {
    if (!is_symmetric(t, a, b)) throw InputError("'" + name + "' must be symmetric in its lower indices", 0);
  };
  auto check_antisym = [](const std::optional<TensorField>& t, const std::string& name) {
    if (t && !is_antisymmetric(*t, 1, 2)) throw InputError("'" + name + "' must be antisymmetric in its lower indices", 0);
  };

  switch (*kind) {
    case MappingKind::geodesic:
      return EquitorsionGeodesic{require("psi")};
    case MappingKind::second_class: {
      if (!blocks.count("rho") && !blocks.count("sigma"))
        throw InputError("second-class mapping requires a 'rho' or 'sigma' block", 0);
      SecondClass s{optional("rho").value_or(TensorField(dim, 0, 1)), optional("sigma").value_or(TensorField(dim, 1, 2)),
                    optional("tau"), optional("tau_bar")};
      check_sym(s.sigma, 1, 2, "sigma");
      check_antisym(s.tau, "tau");
      check_antisym(s.tau_bar, "tau_bar");
      return s;
    }
    case MappingKind::general: {
      TensorField p = require("P");
      check_sym(p, 1, 2, "P");
      auto tau = optional("tau");
      auto tau_bar = optional("tau_bar");
      check_antisym(tau, "tau");
      check_antisym(tau_bar, "tau_bar");
      TensorField t = tau.value_or(TensorField(dim, 1, 2));
      return General{p, t, tau_bar.value_or(t)};
    }
    case MappingKind::almost_geodesic_pi1: {
      TensorField a = require("a");
      TensorField p = require("P");
      check_sym(a, 0, 1, "a");
      check_sym(p, 1, 2, "P");
      return AlmostGeodesicPi1{a, p};
    }
  }
  throw InputError("unknown mapping kind", 0);
}

std::string print_mapping(const MappingSpec& spec) {
  std::ostringstream os;
  os << "mapping " << kind_name(kind_of(spec)) << '\n';
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EquitorsionGeodesic>) {
          print_block(os, "psi", s.psi);
        } else if constexpr (std::is_same_v<T, SecondClass>) {
          print_block(os, "rho", s.rho);
          print_block(os, "sigma", s.sigma);
          if (s.tau) print_block(os, "tau", *s.tau);
          if (s.tau_bar) print_block(os, "tau_bar", *s.tau_bar);
        } else if constexpr (std::is_same_v<T, General>) {
          print_block(os, "P", s.sym_deformation);
          print_block(os, "tau", s.tau);
          print_block(os, "tau_bar", s.tau_bar);
        } else {
          print_block(os, "a", s.a);
          print_block(os, "P", s.deformation);
        }
      },
      spec);
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'", 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace affinv
