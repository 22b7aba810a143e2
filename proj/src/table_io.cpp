#include "tmpp/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tmpp/errors.hpp"

namespace tmpp {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string at_line(std::size_t n, const std::string& what) {
  return "line " + std::to_string(n) + ": " + what;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(at_line(line_no, "malformed number '" + s + "'"));
  }
  return value;
}

// Reads the header and checks it matches `node,<columns...>`.
std::vector<std::string> read_header(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty table");
  ++line_no;
  return split_csv(line);
}

std::string join_header(const std::vector<std::string>& cols) {
  std::string h = "node";
  for (const auto& c : cols) h += "," + c;
  return h;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> profile_columns(ProfileKind kind) {
  std::vector<std::string> cols;
  for (std::size_t m = 0; m < kMotifCount; ++m) {
    const auto tag = MotifId::from_index(m).tag();
    if (kind == ProfileKind::kPositionless) {
      cols.push_back(tag);
    } else {
      for (int p = 1; p <= 3; ++p) cols.push_back(tag + "_p" + std::to_string(p));
    }
  }
  return cols;
}

void write_counts_csv(std::ostream& out, const PositionCountMatrix& counts) {
  out << join_header(profile_columns(ProfileKind::kPositioned)) << '\n';
  for (NodeId v = 0; v < counts.node_count(); ++v) {
    out << counts.names()[v];
    for (std::size_t m = 0; m < kMotifCount; ++m) {
      const auto motif = MotifId::from_index(m);
      for (int p = 1; p <= 3; ++p) {
        out << ',' << (p <= node_count(motif) ? counts.at(v, cell_index(motif, p)) : 0);
      }
    }
    out << '\n';
  }
}

PositionCountMatrix read_counts_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto header = read_header(in, line_no);
  const auto expected = profile_columns(ProfileKind::kPositioned);
  if (header.size() != expected.size() + 1 || header[0] != "node" ||
      !std::equal(expected.begin(), expected.end(), header.begin() + 1)) {
    throw ValidationError("count table header does not match the 108-column motif layout");
  }
  std::vector<std::string> names;
  std::vector<std::uint64_t> cells;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ValidationError(at_line(line_no, "wrong number of columns"));
    names.push_back(f[0]);
    const std::size_t base = cells.size();
    cells.resize(base + kCellCount, 0);
    for (std::size_t m = 0; m < kMotifCount; ++m) {
      const auto motif = MotifId::from_index(m);
      for (int p = 1; p <= 3; ++p) {
        const auto v = parse_number<std::uint64_t>(f[1 + wide_index(motif, p)], line_no);
        if (p > node_count(motif)) {
          if (v != 0) throw ValidationError(at_line(line_no, motif.tag() + " has no position 3"));
        } else {
          cells[base + cell_index(motif, p)] = v;
        }
      }
    }
  }
  return PositionCountMatrix(std::move(names), std::nullopt, std::move(cells));
}

void write_motif_totals_csv(std::ostream& out, const PositionCountMatrix& counts) {
  out << "motif,nodes,instances\n";
  for (std::size_t m = 0; m < kMotifCount; ++m) {
    const auto motif = MotifId::from_index(m);
    out << motif.tag() << ',' << node_count(motif) << ',' << counts.motif_totals()[m] << '\n';
  }
}

void write_profiles_csv(std::ostream& out, const ProfileMatrix& profiles) {
  const auto kind = profiles.kind();
  out << join_header(profile_columns(kind)) << '\n';
  for (std::size_t i = 0; i < profiles.node_count(); ++i) {
    out << profiles.names()[i];
    const auto row = profiles.row(i);
    if (kind == ProfileKind::kPositionless) {
      for (double x : row) out << ',' << format_real(x);
    } else {
      for (std::size_t m = 0; m < kMotifCount; ++m) {
        const auto motif = MotifId::from_index(m);
        for (int p = 1; p <= 3; ++p) {
          out << ',' << (p <= node_count(motif) ? format_real(row[cell_index(motif, p)]) : "0");
        }
      }
    }
    out << '\n';
  }
}

ProfileMatrix read_profiles_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto header = read_header(in, line_no);
  ProfileKind kind;
  auto matches = [&](ProfileKind k) {
    const auto cols = profile_columns(k);
    return header.size() == cols.size() + 1 && header[0] == "node" &&
           std::equal(cols.begin(), cols.end(), header.begin() + 1);
  };
  if (matches(ProfileKind::kPositioned)) {
    kind = ProfileKind::kPositioned;
  } else if (matches(ProfileKind::kPositionless)) {
    kind = ProfileKind::kPositionless;
  } else {
    throw ValidationError("profile table header matches neither the positioned nor positionless layout");
  }
  std::vector<std::string> names;
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ValidationError(at_line(line_no, "wrong number of columns"));
    names.push_back(f[0]);
    if (kind == ProfileKind::kPositionless) {
      for (std::size_t c = 1; c < f.size(); ++c) values.push_back(parse_number<double>(f[c], line_no));
    } else {
      for (std::size_t c = 0; c < kCellCount; ++c) {
        const auto motif = cell_motif(c);
        values.push_back(parse_number<double>(f[1 + wide_index(motif, cell_position(c))], line_no));
      }
    }
    for (auto it = values.end() - static_cast<std::ptrdiff_t>(dimension(kind)); it != values.end(); ++it) {
      if (!(*it >= 0.0 && *it <= 1.0)) throw ValidationError(at_line(line_no, "profile entry outside [0,1]"));
    }
  }
  return ProfileMatrix(kind, std::move(names), std::move(values));
}

void write_dropped_csv(std::ostream& out, const ProfileMatrix& profiles) {
  out << "node,total\n";
  for (const auto& d : profiles.dropped()) out << d.name << ',' << d.total << '\n';
}

void write_dendrogram(std::ostream& out, const Dendrogram& d, const std::vector<std::string>& names) {
  if (names.size() != d.leaf_count()) throw ValidationError("leaf names do not match the dendrogram");
  out << "# dendrogram\n"
         "# linkage: ward\n"
         "# height: increase in within-cluster sum of squares, |I||J|/(|I|+|J|)*||c_I-c_J||^2\n"
         "# tie-break: smallest (left id, right id)\n"
         "# ids: leaves 0..n-1, merge i creates id n+i\n"
         "# columns: left right height size\n";
  out << "leaves " << d.leaf_count() << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) out << "leaf " << i << ' ' << names[i] << '\n';
  for (const auto& m : d.merges()) {
    out << m.left << ' ' << m.right << ' ' << format_real(m.height) << ' ' << m.size << '\n';
  }
}

Dendrogram read_dendrogram(std::istream& in, std::vector<std::string>* names) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t leaves = 0;
  bool have_count = false;
  std::vector<std::string> leaf_names;
  std::vector<Merge> merges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string first;
    ss >> first;
    if (first == "leaves") {
      if (!(ss >> leaves)) throw ValidationError(at_line(line_no, "bad leaf count"));
      have_count = true;
    } else if (first == "leaf") {
      std::size_t id = 0;
      if (!(ss >> id) || id != leaf_names.size()) throw ValidationError(at_line(line_no, "bad leaf line"));
      std::string name;
      std::getline(ss >> std::ws, name);
      leaf_names.push_back(name);
    } else {
      Merge m;
      std::string height;
      try {
        m.left = parse_number<std::size_t>(first, line_no);
      } catch (const ValidationError&) {
        throw ValidationError(at_line(line_no, "unrecognized line"));
      }
      if (!(ss >> m.right >> height >> m.size)) throw ValidationError(at_line(line_no, "bad merge line"));
      m.height = parse_number<double>(height, line_no);
      merges.push_back(m);
    }
  }
  if (!have_count) throw ValidationError("dendrogram is missing its 'leaves' line");
  if (leaf_names.size() != leaves) throw ValidationError("dendrogram leaf names are incomplete");
  if (names) *names = leaf_names;
  return Dendrogram(leaves, std::move(merges));
}

void write_clusters_csv(std::ostream& out, const FlatClustering& c, const std::vector<std::string>& names) {
  if (names.size() != c.labels.size()) throw ValidationError("cluster labels do not match node names");
  out << "node,cluster\n";
  for (std::size_t i = 0; i < names.size(); ++i) out << names[i] << ',' << c.labels[i] << '\n';
}

void write_centroids_csv(std::ostream& out, ProfileKind kind, const std::vector<double>& centroids,
                         const FlatClustering& clustering) {
  const std::size_t dim = dimension(kind);
  std::vector<std::size_t> size(static_cast<std::size_t>(clustering.k), 0);
  for (int l : clustering.labels) ++size[static_cast<std::size_t>(l)];
  out << "cluster,size";
  for (const auto& c : profile_columns(kind)) out << ',' << c;
  out << '\n';
  for (std::size_t c = 0; c < size.size(); ++c) {
    out << c << ',' << size[c];
    const double* row = centroids.data() + c * dim;
    if (kind == ProfileKind::kPositionless) {
      for (std::size_t m = 0; m < dim; ++m) out << ',' << format_real(row[m]);
    } else {
      for (std::size_t m = 0; m < kMotifCount; ++m) {
        const auto motif = MotifId::from_index(m);
        for (int p = 1; p <= 3; ++p) {
          out << ',' << (p <= node_count(motif) ? format_real(row[cell_index(motif, p)]) : "0");
        }
      }
    }
    out << '\n';
  }
}

CentroidTable read_centroids_csv(std::istream& in) {
  std::size_t line_no = 0;
  const auto header = read_header(in, line_no);
  CentroidTable t;
  auto matches = [&](ProfileKind k) {
    const auto cols = profile_columns(k);
    return header.size() == cols.size() + 2 && header[0] == "cluster" && header[1] == "size" &&
           std::equal(cols.begin(), cols.end(), header.begin() + 2);
  };
  if (matches(ProfileKind::kPositioned)) {
    t.kind = ProfileKind::kPositioned;
  } else if (matches(ProfileKind::kPositionless)) {
    t.kind = ProfileKind::kPositionless;
  } else {
    throw ValidationError("centroid table header matches neither the positioned nor positionless layout");
  }
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ValidationError(at_line(line_no, "wrong number of columns"));
    if (parse_number<std::size_t>(f[0], line_no) != t.sizes.size()) {
      throw ValidationError(at_line(line_no, "clusters must be numbered 0, 1, 2, ..."));
    }
    t.sizes.push_back(parse_number<std::size_t>(f[1], line_no));
    if (t.kind == ProfileKind::kPositionless) {
      for (std::size_t c = 2; c < f.size(); ++c) t.values.push_back(parse_number<double>(f[c], line_no));
    } else {
      for (std::size_t c = 0; c < kCellCount; ++c) {
        t.values.push_back(parse_number<double>(f[2 + wide_index(cell_motif(c), cell_position(c))], line_no));
      }
    }
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace tmpp
