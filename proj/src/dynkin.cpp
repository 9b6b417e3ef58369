#include "langdual/rootdatum.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace langdual {

char family_letter(Family f) {
  return "ABCDEFG"[static_cast<int>(f)];
}

namespace {

void require_legal(const SimpleFactor& f) {
  const std::size_t n = f.rank;
  bool ok = false;
  switch (f.family) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 2; break;
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 3; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok)
    throw InvalidDescriptor(std::string("illegal simple factor ") + family_letter(f.family) + std::to_string(n));
}

// Roots of one simple factor as (simple-root coords, simple-coroot coords),
// generated by closing the simple roots under simple reflections.
std::vector<std::pair<IntVector, IntVector>> reflection_closure(const IntMatrix& a) {
  const std::size_t r = a.rows();
  std::map<IntVector, IntVector> found;
  std::deque<IntVector> queue;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = 1;
    found.emplace(e, e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVector c = queue.front();
    queue.pop_front();
    const IntVector d = found.at(c);
    for (std::size_t i = 0; i < r; ++i) {
      Integer beta_hi = 0, alphai_hbeta = 0;
      for (std::size_t j = 0; j < r; ++j) {
        beta_hi += c[j] * a(i, j);
        alphai_hbeta += d[j] * a(j, i);
      }
      IntVector c2 = c, d2 = d;
      c2[i] -= beta_hi;
      d2[i] -= alphai_hbeta;
      if (found.emplace(c2, d2).second) queue.push_back(c2);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace

IntMatrix family_cartan_matrix(Family family, std::size_t n) {
  require_legal({family, n});
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) {  // 1-based Bourbaki labels
    a(i - 1, j - 1) = -1;
    a(j - 1, i - 1) = -1;
  };
  switch (family) {
    case Family::A:
      for (std::size_t i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (std::size_t i = 1; i < n; ++i) link(i, i + 1);
      a(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case Family::C:
      for (std::size_t i = 1; i < n; ++i) link(i, i + 1);
      a(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case Family::D:
      for (std::size_t i = 1; i + 1 < n; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (std::size_t i = 3; i < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(1, 2);
      link(2, 3);
      link(3, 4);
      a(2, 1) = -2;  // alpha_3, alpha_4 short
      break;
    case Family::G:
      link(1, 2);
      a(0, 1) = -3;  // alpha_1 short
      break;
  }
  return a;
}

RootDatum build_from_dynkin(const DynkinDescriptor& desc) {
  for (const auto& f : desc.factors) require_legal(f);

  std::size_t r = 0;
  for (const auto& f : desc.factors) r += f.rank;
  IntMatrix a(r, r);

  struct Root {
    IntVector c, d;  // global simple-root / simple-coroot coordinates
    Integer height;
  };
  std::vector<Root> all;
  std::size_t offset = 0;
  for (const auto& f : desc.factors) {
    IntMatrix af = family_cartan_matrix(f.family, f.rank);
    for (std::size_t i = 0; i < f.rank; ++i)
      for (std::size_t j = 0; j < f.rank; ++j) a(offset + i, offset + j) = af(i, j);
    for (auto& [c, d] : reflection_closure(af)) {
      Root root{IntVector(r, 0), IntVector(r, 0), 0};
      for (std::size_t i = 0; i < f.rank; ++i) {
        root.c[offset + i] = c[i];
        root.d[offset + i] = d[i];
        root.height += c[i];
      }
      all.push_back(std::move(root));
    }
    offset += f.rank;
  }

  IntMatrix lattice;  // rows: basis of Lambda_ss in coweight coordinates
  switch (desc.isogeny) {
    case Isogeny::SimplyConnected: lattice = a; break;
    case Isogeny::Adjoint: lattice = IntMatrix::identity(r); break;
    case Isogeny::Custom:
      lattice = desc.custom_lattice;
      if (lattice.rows() != r || lattice.cols() != r)
        throw InvalidDescriptor("custom lattice must be a " + std::to_string(r) + "x" + std::to_string(r) + " matrix");
      if (det_exact(lattice) == 0) throw InvalidDescriptor("custom lattice basis is singular");
      break;
  }
  const RatMatrix lattice_t = to_rational(lattice.transpose());
  const IntMatrix a_t = a.transpose();

  // Positive roots first by (height, coordinates), then their negatives.
  std::sort(all.begin(), all.end(), [](const Root& x, const Root& y) {
    const bool px = x.height > 0, py = y.height > 0;
    if (px != py) return px;
    const Integer hx = abs(x.height), hy = abs(y.height);
    if (hx != hy) return hx < hy;
    if (px) return x.c < y.c;
    return y.c < x.c;
  });

  RootDatum out;
  out.rank = r + desc.torus_rank;
  out.label = descriptor_label(desc);
  for (const auto& root : all) {
    // Coroot in coweight coordinates is A^T d; solve lattice^T x = A^T d.
    const IntVector coweight = a_t * root.d;
    auto x = solve_exact(lattice_t, to_rational(coweight));
    IntVector coroot(out.rank, 0), weight(out.rank, 0);
    for (std::size_t k = 0; k < r; ++k) {
      if ((*x)[k].get_den() != 1)
        throw InvalidDescriptor("custom lattice does not contain the coroot lattice");
      coroot[k] = (*x)[k].get_num();
    }
    const IntVector w = lattice * root.c;
    std::copy(w.begin(), w.end(), weight.begin());
    out.roots.push_back(std::move(weight));
    out.coroots.push_back(std::move(coroot));
  }
  return out;
}

std::string descriptor_label(const DynkinDescriptor& desc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : desc.factors) {
    os << (first ? "" : " x ") << family_letter(f.family) << f.rank;
    first = false;
  }
  if (desc.torus_rank > 0) os << (first ? "" : " x ") << "T" << desc.torus_rank;
  if (!desc.factors.empty()) {
    switch (desc.isogeny) {
      case Isogeny::SimplyConnected: os << " (sc)"; break;
      case Isogeny::Adjoint: os << " (adj)"; break;
      case Isogeny::Custom: os << " (custom)"; break;
    }
  }
  return os.str();
}

std::string identify_type(const RootDatum& d) {
  const IntMatrix a = cartan_matrix(d);
  const std::size_t r = a.rows();
  std::vector<bool> seen(r, false);
  std::vector<std::string> parts;
  auto degree = [&](std::size_t i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < r; ++j) k += (j != i && a(i, j) != 0);
    return k;
  };
  for (std::size_t s = 0; s < r; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t j = 0; j < r; ++j)
        if (!seen[j] && a(comp[k], j) != 0) {
          seen[j] = true;
          comp.push_back(j);
        }
    const std::size_t m = comp.size();
    std::optional<std::pair<std::size_t, std::size_t>> multiple;  // a(i, j) < -1
    bool triple = false;
    std::optional<std::size_t> branch;
    for (auto i : comp) {
      if (degree(i) > 2) branch = i;
      for (auto j : comp)
        if (i != j && a(i, j) < -1) {
          multiple = std::make_pair(i, j);
          triple = triple || a(i, j) == -3;
        }
    }
    std::string name;
    if (triple) {
      name = "G2";
    } else if (multiple) {
      const auto [i, j] = *multiple;
      if (m == 2) name = "B2";
      else if (degree(i) == 2 && degree(j) == 2) name = "F4";
      else name = std::string(degree(i) == 1 ? "B" : "C") + std::to_string(m);
    } else if (!branch) {
      name = "A" + std::to_string(m);
    } else {
      // Arm lengths from the branch node.
      std::vector<std::size_t> arms;
      for (std::size_t j = 0; j < r; ++j) {
        if (j == *branch || a(*branch, j) == 0) continue;
        std::size_t len = 1, prev = *branch, cur = j;
        while (degree(cur) == 2) {
          std::size_t next = cur;
          for (std::size_t k = 0; k < r; ++k)
            if (k != cur && k != prev && a(cur, k) != 0) next = k;
          prev = cur;
          cur = next;
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      name = std::string(arms.size() == 3 && arms[0] == 1 && arms[1] == 1 ? "D" : "E") + std::to_string(m);
    }
    parts.push_back(name);
  }
  // Larger factors first, then by family letter.
  std::sort(parts.begin(), parts.end(), [](const std::string& x, const std::string& y) {
    const auto rx = std::stoul(x.substr(1)), ry = std::stoul(y.substr(1));
    return rx != ry ? rx > ry : x < y;
  });
  const std::size_t torus = d.rank - r;
  if (torus > 0) parts.push_back("T" + std::to_string(torus));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
  if (r == 0) return out.empty() ? "T0" : out;

  auto saturated = [](const std::vector<IntVector>& rows, std::size_t n) {
    for (const auto& f : smith_normal_form(IntMatrix::from_rows(rows, n)))
      if (f > 1) return false;
    return true;
  };
  if (saturated(d.coroots, d.rank)) out += " (sc)";
  else if (saturated(d.roots, d.rank)) out += " (adj)";
  else out += " (intermediate)";
  return out;
}

DynkinDescriptor parse_descriptor(const std::string& text) {
  DynkinDescriptor desc;
  std::optional<Isogeny> iso;
  std::size_t pos = 0;
  if (text.empty()) throw InvalidDescriptor("empty type descriptor");
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? text.size() + 1 : next + 1;

    std::string suffix;
    if (auto colon = tok.find(':'); colon != std::string::npos) {
      suffix = tok.substr(colon + 1);
      tok = tok.substr(0, colon);
    }
    if (!suffix.empty()) {
      Isogeny s;
      if (suffix == "sc") s = Isogeny::SimplyConnected;
      else if (suffix == "adj" || suffix == "ad") s = Isogeny::Adjoint;
      else throw InvalidDescriptor("unknown isogeny suffix ':" + suffix + "'");
      if (iso && *iso != s) throw InvalidDescriptor("conflicting isogeny suffixes in '" + text + "'");
      iso = s;
    }
    if (tok.size() < 2) throw InvalidDescriptor("malformed factor '" + tok + "'");
    const char letter = tok[0];
    const std::string digits = tok.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) || digits.size() > 3)
      throw InvalidDescriptor("malformed factor '" + tok + "'");
    const std::size_t n = std::stoul(digits);
    if (letter == 'T') {
      desc.torus_rank += n;
      continue;
    }
    static const std::string letters = "ABCDEFG";
    auto f = letters.find(letter);
    if (f == std::string::npos) throw InvalidDescriptor("unknown family '" + std::string(1, letter) + "'");
    SimpleFactor sf{static_cast<Family>(f), n};
    require_legal(sf);
    desc.factors.push_back(sf);
  }
  desc.isogeny = iso.value_or(Isogeny::SimplyConnected);
  return desc;
}

}  // namespace langdual
