#pragma once

#include <algorithm>
#include <vector>

#include "dal/ast.hpp"

namespace dal {

// Canonical term form: constants folded, products and sums flattened into
// right-leaning chains, factors sorted, like monomials collected, zero
// monomials dropped.  Products are not distributed over sums.

TermPtr normalize(const TermPtr& t);

namespace detail {

struct Monomial {
  Rat coef;
  std::vector<TermPtr> factors;  // sorted, none Const
};

inline void flatten_product(const TermPtr& t, Monomial& m);

inline void flatten_sum(const TermPtr& t, std::vector<Monomial>& out) {
  if (t->tag == TermTag::Plus) {
    flatten_sum(t->left(), out);
    flatten_sum(t->right(), out);
    return;
  }
  Monomial m;
  m.coef = 1;
  flatten_product(t, m);
  out.push_back(std::move(m));
}

inline void flatten_product(const TermPtr& t, Monomial& m) {
  switch (t->tag) {
    case TermTag::Times:
      flatten_product(t->left(), m);
      flatten_product(t->right(), m);
      return;
    case TermTag::Const:
      m.coef *= t->value;
      return;
    default: {
      TermPtr n = normalize(t);
      if (n->tag == TermTag::Const) {
        m.coef *= n->value;
      } else if (n->tag == TermTag::Times || n->tag == TermTag::Plus) {
        // A factor can renormalize into a product (constant folding) or stay
        // a sum; products are refolded, sums are kept as opaque factors.
        if (n->tag == TermTag::Times) {
          flatten_product(n, m);
        } else {
          m.factors.push_back(n);
        }
      } else {
        m.factors.push_back(n);
      }
      return;
    }
  }
}

inline int compare_factors(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return compare_int(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

inline TermPtr rebuild_monomial(const Monomial& m) {
  if (m.factors.empty()) return mk_const(m.coef);
  TermPtr chain = m.factors.back();
  for (size_t i = m.factors.size() - 1; i-- > 0;) chain = mk_times(m.factors[i], chain);
  if (m.coef == 1) return chain;
  return mk_times(mk_const(m.coef), chain);
}

}  // namespace detail

inline TermPtr normalize(const TermPtr& t) {
  switch (t->tag) {
    case TermTag::Var:
    case TermTag::DiffVar:
    case TermTag::Const:
      return t;
    case TermTag::Func: {
      std::vector<TermPtr> args;
      args.reserve(t->kids.size());
      for (const auto& k : t->kids) args.push_back(normalize(k));
      return mk_func(t->name, std::move(args));
    }
    case TermTag::Differential:
      return mk_differential(normalize(t->inner()));
    case TermTag::Plus:
    case TermTag::Times: {
      std::vector<detail::Monomial> monomials;
      detail::flatten_sum(t, monomials);
      for (auto& m : monomials)
        std::sort(m.factors.begin(), m.factors.end(),
                  [](const TermPtr& a, const TermPtr& b) { return compare(a, b) < 0; });
      // Collect like monomials; the constant monomial sorts last.
      std::sort(monomials.begin(), monomials.end(),
                [](const detail::Monomial& a, const detail::Monomial& b) {
                  if (a.factors.empty() != b.factors.empty()) return b.factors.empty();
                  return detail::compare_factors(a.factors, b.factors) < 0;
                });
      std::vector<detail::Monomial> collected;
      for (auto& m : monomials) {
        if (!collected.empty() &&
            detail::compare_factors(collected.back().factors, m.factors) == 0) {
          collected.back().coef += m.coef;
        } else {
          collected.push_back(std::move(m));
        }
      }
      std::vector<TermPtr> parts;
      for (const auto& m : collected) {
        if (m.coef == 0) continue;
        parts.push_back(detail::rebuild_monomial(m));
      }
      if (parts.empty()) return mk_const(0);
      TermPtr chain = parts.back();
      for (size_t i = parts.size() - 1; i-- > 0;) chain = mk_plus(parts[i], chain);
      return chain;
    }
  }
  return t;
}

// Normalizes every term inside a formula; the logical structure is untouched.
FormulaPtr normalize_terms(const FormulaPtr& f);

inline ProgramPtr normalize_terms(const ProgramPtr& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return mk_assign(p->var, normalize(p->term));
    case ProgramTag::Test:
      return mk_test(normalize_terms(p->fml));
    case ProgramTag::DAP:
      return mk_dap(p->vars, normalize_terms(p->fml));
    case ProgramTag::Seq:
      return mk_seq(normalize_terms(p->a), normalize_terms(p->b));
    case ProgramTag::Choice:
      return mk_choice(normalize_terms(p->a), normalize_terms(p->b));
    case ProgramTag::Star:
      return mk_star(normalize_terms(p->a));
  }
  return p;
}

inline FormulaPtr normalize_terms(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Cmp:
      return mk_cmp(f->op, normalize(f->lhs), normalize(f->rhs));
    case FormulaTag::Pred: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(normalize(a));
      return mk_pred(f->name, std::move(args));
    }
    case FormulaTag::Not:
      return mk_not(normalize_terms(f->a));
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      return mk_binary(f->tag, normalize_terms(f->a), normalize_terms(f->b));
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return mk_quant(f->tag, f->var, normalize_terms(f->a));
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return mk_modal(f->tag, normalize_terms(f->prog), normalize_terms(f->a));
  }
  return f;
}

}  // namespace dal
