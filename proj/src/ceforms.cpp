#include "langdual/ceforms.hpp"

#include <algorithm>

namespace langdual {

namespace {

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(Support& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

void accumulate(std::map<Support, Scalar>& terms, Support idx, const Scalar& c) {
  if (c == 0) return;
  const int sign = sort_with_sign(idx);
  if (sign == 0) return;
  auto [it, fresh] = terms.try_emplace(std::move(idx), 0);
  if (sign > 0) it->second += c;
  else it->second -= c;
  if (it->second == 0) terms.erase(it);
}

void merge_into(std::map<Support, Scalar>& into, const std::map<Support, Scalar>& from) {
  for (const auto& [k, v] : from) {
    auto [it, fresh] = into.try_emplace(k, 0);
    it->second += v;
    if (it->second == 0) into.erase(it);
  }
}

std::uint64_t pack(const Support& idx) {
  std::uint64_t key = 0;
  for (auto i : idx) key = (key << 16) | i;
  return key;
}

}  // namespace

InvariantForm::InvariantForm(LieAlgebraPtr base, std::size_t degree, NormalizationTag tag)
    : base_(std::move(base)), degree_(degree), tag_(std::move(tag)) {
  if (!base_) throw FormMismatch("form needs a base algebra");
}

InvariantForm InvariantForm::constant(LieAlgebraPtr base, const Scalar& c, NormalizationTag tag) {
  InvariantForm f(std::move(base), 0, std::move(tag));
  f.add_term({}, c);
  return f;
}

InvariantForm InvariantForm::dual_basis(LieAlgebraPtr base, std::size_t i) {
  InvariantForm f(std::move(base), 1);
  if (i >= f.base_->dim()) throw DimensionMismatch("dual_basis index out of range");
  f.add_term({static_cast<std::uint32_t>(i)}, 1);
  return f;
}

InvariantForm InvariantForm::one_form(LieAlgebraPtr base, const RatVector& values) {
  InvariantForm f(std::move(base), 1);
  if (values.size() != f.base_->dim()) throw DimensionMismatch("one_form: wrong number of values");
  for (std::size_t i = 0; i < values.size(); ++i) f.add_term({static_cast<std::uint32_t>(i)}, values[i]);
  return f;
}

void InvariantForm::add_term(Support idx, const Scalar& c) {
  if (idx.size() != degree_) throw DimensionMismatch("term degree does not match the form");
  for (auto i : idx)
    if (i >= base_->dim()) throw DimensionMismatch("term index out of range");
  accumulate(terms_, std::move(idx), c);
}

Scalar InvariantForm::evaluate_basis(const std::vector<std::size_t>& idx) const {
  if (idx.size() != degree_) throw DimensionMismatch("evaluate: wrong number of arguments");
  Support s(idx.begin(), idx.end());
  const int sign = sort_with_sign(s);
  if (sign == 0) return 0;
  auto it = terms_.find(s);
  if (it == terms_.end()) return 0;
  return sign > 0 ? it->second : Scalar(-it->second);
}

Scalar InvariantForm::evaluate(const std::vector<RatVector>& args) const {
  if (args.size() != degree_) throw DimensionMismatch("evaluate: wrong number of arguments");
  for (const auto& a : args)
    if (a.size() != base_->dim()) throw DimensionMismatch("evaluate: argument has the wrong length");
  Scalar total = 0;
  const std::size_t k = degree_;
  for (const auto& [idx, c] : terms_) {
    RatMatrix m(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t col = 0; col < k; ++col) m(r, col) = args[r][idx[col]];
    total += c * (k == 0 ? Scalar(1) : det_exact(m));
  }
  return total;
}

InvariantForm InvariantForm::with_tag(NormalizationTag tag) const {
  InvariantForm f = *this;
  f.tag_ = std::move(tag);
  return f;
}

void InvariantForm::require_compatible(const InvariantForm& o, const char* what) const {
  if (base_ != o.base_) throw FormMismatch(std::string(what) + ": forms live on different algebras");
  if (degree_ != o.degree_) throw FormMismatch(std::string(what) + ": degrees differ");
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  require_compatible(o, "addition");
  if (o.is_zero()) return *this;
  if (is_zero()) tag_ = o.tag_;
  else if (!(tag_ == o.tag_)) throw FormMismatch("addition: normalization tags differ");
  merge_into(terms_, o.terms_);
  return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) {
  return *this += Scalar(-1) * o;
}

InvariantForm operator*(const Scalar& s, const InvariantForm& f) {
  InvariantForm out(f.base_, f.degree_, f.tag_);
  if (s == 0) return out;
  for (const auto& [k, v] : f.terms_) out.terms_.emplace(k, s * v);
  return out;
}

FormEvaluator::FormEvaluator(const InvariantForm& form) : degree_(form.degree()) {
  if (degree_ > 4 || form.base()->dim() > 0xffff) throw std::invalid_argument("FormEvaluator supports degree <= 4");
  for (const auto& [idx, c] : form.terms()) values_.emplace(pack(idx), c);
}

Scalar FormEvaluator::operator()(const std::vector<const SparseVec*>& args) const {
  if (args.size() != degree_) throw DimensionMismatch("evaluate: wrong number of arguments");
  Scalar total = 0;
  Support idx(degree_);
  std::vector<std::size_t> pos(degree_, 0);
  for (const auto* a : args)
    if (a->empty()) return 0;
  while (true) {
    Scalar coeff = 1;
    for (std::size_t r = 0; r < degree_; ++r) {
      idx[r] = (*args[r])[pos[r]].first;
      coeff *= (*args[r])[pos[r]].second;
    }
    const int sign = sort_with_sign(idx);
    if (sign != 0) {
      auto it = values_.find(pack(idx));
      if (it != values_.end()) {
        if (sign > 0) total += coeff * it->second;
        else total -= coeff * it->second;
      }
    }
    std::size_t r = 0;
    while (r < degree_ && ++pos[r] == args[r]->size()) pos[r++] = 0;
    if (r == degree_) break;
  }
  return total;
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  if (a.base() != b.base()) throw FormMismatch("wedge: forms live on different algebras");
  InvariantForm out(a.base(), a.degree() + b.degree(), a.tag() * b.tag());
  if (out.degree() > a.base()->dim()) return out;
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      Support idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  return out;
}

InvariantForm ce_differential(const InvariantForm& w, unsigned jobs) {
  const auto& g = *w.base();
  const std::size_t n = g.dim();
  InvariantForm out(w.base(), w.degree() + 1, w.tag());
  if (w.degree() == 0 || out.degree() > n) return out;

  // de[m] = -sum_{a<b} c^m_ab e^a ^ e^b
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>> de(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (const auto& [m, c] : g.bracket_basis(a, b))
        de[m].emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), -c);

  std::vector<std::pair<Support, Scalar>> terms(w.terms().begin(), w.terms().end());
  jobs = std::max(1u, jobs);
  std::vector<std::map<Support, Scalar>> partial((terms.size() + 63) / 64);
  parallel_chunks(partial.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t chunk = begin; chunk < end; ++chunk) {
      auto& acc = partial[chunk];
      const std::size_t last = std::min(terms.size(), 64 * (chunk + 1));
      for (std::size_t t = 64 * chunk; t < last; ++t) {
        const auto& [idx, c] = terms[t];
        for (std::size_t p = 0; p < idx.size(); ++p) {
          const Scalar cp = (p % 2 == 0) ? c : Scalar(-c);
          for (const auto& [a, b, v] : de[idx[p]]) {
            Support s;
            s.reserve(idx.size() + 1);
            s.insert(s.end(), idx.begin(), idx.begin() + p);
            s.push_back(a);
            s.push_back(b);
            s.insert(s.end(), idx.begin() + p + 1, idx.end());
            accumulate(acc, std::move(s), cp * v);
          }
        }
      }
    }
  });
  std::map<Support, Scalar> total;
  for (const auto& p : partial) merge_into(total, p);
  for (auto& [k, v] : total) out.add_term(k, v);
  return out;
}

InvariantForm pullback(const InvariantForm& w, LieAlgebraPtr target, const std::vector<SparseVec>& images) {
  if (images.size() != target->dim()) throw DimensionMismatch("pullback: one image per target basis vector");
  // rows[i] lists (j, coefficient of base e_i in images[j])
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows(w.base()->dim());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [i, c] : images[j]) {
      if (i >= rows.size()) throw DimensionMismatch("pullback: image index out of range");
      rows[i].emplace_back(static_cast<std::uint32_t>(j), c);
    }
  InvariantForm out(target, w.degree(), w.tag());
  for (const auto& [idx, c] : w.terms()) {
    const std::size_t k = idx.size();
    std::vector<std::size_t> pos(k, 0);
    bool empty = false;
    for (auto i : idx) empty = empty || rows[i].empty();
    if (empty) continue;
    while (true) {
      Support s(k);
      Scalar coeff = c;
      for (std::size_t r = 0; r < k; ++r) {
        s[r] = rows[idx[r]][pos[r]].first;
        coeff *= rows[idx[r]][pos[r]].second;
      }
      out.add_term(std::move(s), coeff);
      std::size_t r = 0;
      while (r < k && ++pos[r] == rows[idx[r]].size()) pos[r++] = 0;
      if (r == k) break;
    }
  }
  return out;
}

InvariantForm cartan_three_form(const LieAlgebraPtr& g) {
  const std::size_t n = g->dim();
  const RatMatrix& k = g->killing_matrix();
  InvariantForm h(g, 3, cartan_tag());
  if (n < 3) return h;
  auto value = [&](std::size_t a, std::size_t b, std::size_t c) {
    Scalar s = 0;
    for (const auto& [m, v] : g->bracket_basis(b, c)) s += k(a, m) * v;
    return s;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const Scalar v = value(a, b, c);
        if (value(b, c, a) != v || value(c, a, b) != v)
          throw std::logic_error("K(x,[y,z]) is not totally antisymmetric at (" + g->label(a) + ", " + g->label(b) +
                                 ", " + g->label(c) + ")");
        h.add_term({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)}, v);
      }
  return h;
}

InvariantForm extended_root_form(const ReductiveLieAlgebra& l, std::size_t root) {
  RatVector values = l.functional_on_torus(l.datum().roots.at(root));
  values.resize(l.dim());
  return InvariantForm::one_form(l.algebra(), values);
}

bool is_closed(const InvariantForm& w, unsigned jobs) {
  return ce_differential(w, jobs).is_zero();
}

bool is_invariant(const InvariantForm& w) {
  const auto& g = *w.base();
  const std::size_t n = g.dim();
  for (std::size_t z = 0; z < n; ++z) {
    // z . e^m = -sum_k c^m_{zk} e^k
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> act(n);
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [m, c] : g.bracket_basis(z, k)) act[m].emplace_back(static_cast<std::uint32_t>(k), -c);
    std::map<Support, Scalar> acc;
    for (const auto& [idx, c] : w.terms())
      for (std::size_t p = 0; p < idx.size(); ++p)
        for (const auto& [k, v] : act[idx[p]]) {
          Support s = idx;
          s[p] = k;
          accumulate(acc, std::move(s), c * v);
        }
    if (!acc.empty()) return false;
  }
  return true;
}

InvariantForm torus_fm_transform(const InvariantForm& w, const RatMatrix& pairing, LieAlgebraPtr target) {
  const std::size_t n = w.base()->dim();
  if (n == 0) throw std::invalid_argument("torus transform needs a torus of positive rank");
  if (!w.base()->is_abelian() || !target->is_abelian())
    throw std::invalid_argument("torus transform needs abelian (flat torus) algebras");
  if (target->dim() != n || pairing.rows() != n || pairing.cols() != n)
    throw DimensionMismatch("torus transform: pairing must be n x n for tori of equal rank n");
  if (det_exact(pairing) == 0) throw std::invalid_argument("torus transform: degenerate pairing");

  auto product = std::make_shared<const LieAlgebra>(LieAlgebra::direct_sum(*w.base(), *target));
  std::vector<SparseVec> proj(2 * n);
  for (std::size_t i = 0; i < n; ++i) proj[i] = {{static_cast<std::uint32_t>(i), Scalar(1)}};
  InvariantForm total = pullback(w, product, proj);

  InvariantForm f0(product, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      f0.add_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(n + j)}, pairing(i, j));
  // q*w ^ F0^(n-k) / (n-k)!
  if (w.degree() <= n) {
    Scalar fact = 1;
    for (std::size_t m = 1; m <= n - w.degree(); ++m) {
      total = wedge(total, f0);
      fact *= m;
    }
    total = (1 / fact) * total;
  }

  InvariantForm out(target, w.degree() <= n ? n - w.degree() : 0, w.tag());
  if (w.degree() > n) return out;
  for (const auto& [idx, c] : total.terms()) {
    if (idx.size() < n || idx[n - 1] != n - 1) continue;  // needs all of 0..n-1
    Support s;
    for (std::size_t r = n; r < idx.size(); ++r) s.push_back(idx[r] - static_cast<std::uint32_t>(n));
    out.add_term(std::move(s), c);
  }
  return out;
}

}  // namespace langdual
