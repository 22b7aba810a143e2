#include "tmpp/motif_catalog.hpp"

#include <ostream>
#include <stdexcept>

namespace tmpp {

namespace {

// The 6x6 temporal motif grid, row-major M1,1 .. M6,6. Within a row the
// second edge is fixed; within a column the third edge is fixed. The
// bottom-left 2x2 block (M5,1 M5,2 M6,1 M6,2) holds the two-node motifs.
constexpr std::array<std::string_view, kMotifCount> kGrid = {
    "ab-cb-ab", "ab-cb-ba", "ab-cb-ac", "ab-cb-ca", "ab-cb-bc", "ab-cb-cb",  // M1,*
    "ab-bc-ab", "ab-bc-ba", "ab-bc-ac", "ab-bc-ca", "ab-bc-bc", "ab-bc-cb",  // M2,*
    "ab-ca-ab", "ab-ca-ba", "ab-ca-ac", "ab-ca-ca", "ab-ca-bc", "ab-ca-cb",  // M3,*
    "ab-ac-ab", "ab-ac-ba", "ab-ac-ac", "ab-ac-ca", "ab-ac-bc", "ab-ac-cb",  // M4,*
    "ab-ba-ab", "ab-ba-ba", "ab-ba-ac", "ab-ba-ca", "ab-ba-bc", "ab-ba-cb",  // M5,*
    "ab-ab-ab", "ab-ab-ba", "ab-ab-ac", "ab-ab-ca", "ab-ab-bc", "ab-ab-cb",  // M6,*
};

constexpr std::uint8_t kNone = 0xff;

int pair_code(SymbolicEdge e) { return e.from * 3 + e.to; }

struct Tables {
  std::array<MotifSignature, kMotifCount> signatures{};
  std::array<int, kMotifCount> nodes{};
  std::array<std::uint8_t, 81> by_tail{};  // (edge2 code, edge3 code) -> motif
  std::array<std::uint8_t, kMotifCount> cell_offset{};
  std::array<std::uint8_t, kCellCount> cell_to_motif{};

  Tables() {
    by_tail.fill(kNone);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < kMotifCount; ++i) {
      const auto sig = parse_signature(kGrid[i]);
      if (!sig) throw std::logic_error("bad motif grid entry");
      signatures[i] = *sig;
      bool uses_c = false;
      for (const auto& e : sig->edges) uses_c = uses_c || e.from == 2 || e.to == 2;
      nodes[i] = uses_c ? 3 : 2;
      const int key = pair_code(sig->edges[1]) * 9 + pair_code(sig->edges[2]);
      if (by_tail[key] != kNone) throw std::logic_error("duplicate motif signature");
      by_tail[key] = static_cast<std::uint8_t>(i);
      cell_offset[i] = static_cast<std::uint8_t>(offset);
      for (int p = 0; p < nodes[i]; ++p) cell_to_motif[offset++] = static_cast<std::uint8_t>(i);
    }
    if (offset != kCellCount) throw std::logic_error("motif grid has wrong cell count");
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::string MotifId::tag() const { return "M" + std::to_string(row()) + std::to_string(col()); }

std::string MotifId::display() const {
  return "M" + std::to_string(row()) + "," + std::to_string(col());
}

std::optional<MotifSignature> parse_signature(std::string_view text) {
  if (text.size() != 8 || text[2] != '-' || text[5] != '-') return std::nullopt;
  MotifSignature sig;
  int next_label = 0;
  for (int i = 0; i < 3; ++i) {
    const char f = text[static_cast<std::size_t>(i * 3)];
    const char t = text[static_cast<std::size_t>(i * 3 + 1)];
    if (f < 'a' || f > 'c' || t < 'a' || t > 'c' || f == t) return std::nullopt;
    sig.edges[i] = {static_cast<std::uint8_t>(f - 'a'), static_cast<std::uint8_t>(t - 'a')};
    // Labels must be introduced in order a, b, c.
    for (int label : {f - 'a', t - 'a'}) {
      if (label > next_label) return std::nullopt;
      if (label == next_label) ++next_label;
    }
  }
  if (sig.edges[0] != SymbolicEdge{0, 1}) return std::nullopt;
  return sig;
}

std::string to_string(const MotifSignature& sig) {
  std::string s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) s += '-';
    s += static_cast<char>('a' + sig.edges[i].from);
    s += static_cast<char>('a' + sig.edges[i].to);
  }
  return s;
}

const MotifSignature& signature_of(MotifId m) { return tables().signatures.at(m.index()); }

std::optional<MotifId> motif_of(const MotifSignature& sig) {
  if (sig.edges[0] != SymbolicEdge{0, 1}) return std::nullopt;
  const auto hit = tables().by_tail[pair_code(sig.edges[1]) * 9 + pair_code(sig.edges[2])];
  if (hit == kNone) return std::nullopt;
  return MotifId::from_index(hit);
}

int node_count(MotifId m) { return tables().nodes.at(m.index()); }

std::size_t cell_index(MotifId m, int position) {
  if (position < 1 || position > node_count(m)) throw std::out_of_range("no such motif position");
  return tables().cell_offset[m.index()] + static_cast<std::size_t>(position - 1);
}

MotifId cell_motif(std::size_t cell) { return MotifId::from_index(tables().cell_to_motif.at(cell)); }

int cell_position(std::size_t cell) {
  const auto m = cell_motif(cell);
  return static_cast<int>(cell - tables().cell_offset[m.index()]) + 1;
}

std::optional<MotifInstance> classify_triple(const TemporalEdge& e1, const TemporalEdge& e2,
                                             const TemporalEdge& e3) {
  MotifInstance inst;
  inst.node_at = {e1.source, e1.target, 0};
  int labels = 2;
  auto label_of = [&](NodeId x) -> int {
    if (x == inst.node_at[0]) return 0;
    if (x == inst.node_at[1]) return 1;
    if (labels == 3) return x == inst.node_at[2] ? 2 : -1;
    inst.node_at[2] = x;
    labels = 3;
    return 2;
  };
  int codes[2];
  const TemporalEdge* tail[2] = {&e2, &e3};
  for (int i = 0; i < 2; ++i) {
    const int f = label_of(tail[i]->source);
    if (f < 0) return std::nullopt;
    const int t = label_of(tail[i]->target);
    if (t < 0) return std::nullopt;
    codes[i] = f * 3 + t;
  }
  const auto& t = tables();
  const auto hit = t.by_tail[codes[0] * 9 + codes[1]];
  if (hit == kNone) return std::nullopt;  // self-loop edges only
  inst.motif = MotifId::from_index(hit);
  inst.positions = labels;
  return inst;
}

void write_catalog(std::ostream& out) {
  out << "motif,row,col,nodes,edge1,edge2,edge3\n";
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    const auto m = MotifId::from_index(i);
    const auto s = to_string(signature_of(m));
    out << m.tag() << ',' << m.row() << ',' << m.col() << ',' << node_count(m) << ','
        << s.substr(0, 2) << ',' << s.substr(3, 2) << ',' << s.substr(6, 2) << '\n';
  }
}

}  // namespace tmpp
