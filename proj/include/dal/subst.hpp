#pragma once

#include <map>

#include "dal/ast.hpp"
#include "dal/vars.hpp"

namespace dal {

using SubstMap = std::map<Var, TermPtr>;

// Simultaneous capture-avoiding substitution.  Quantified variables are
// renamed automatically when a replacement would be captured; `renamed`, when
// given, reports that a renaming happened.
//
// Substitution under an unexpanded differential term (e)' is refused whenever
// the map touches a variable that the differential reads (a free variable of
// e or its prime): textual replacement there would silently change which
// primes the differential sums over.  Programs cannot be alpha-renamed, so a
// map that meets the bound variables of a modality is refused as well.

TermPtr substitute(const TermPtr& t, const SubstMap& map, bool* renamed = nullptr);
FormulaPtr substitute(const FormulaPtr& f, const SubstMap& map, bool* renamed = nullptr);

namespace detail {

inline VarSet map_range_free_vars(const SubstMap& map) {
  VarSet out;
  for (const auto& [v, t] : map) free_vars(t, out);
  return out;
}

inline bool map_touches(const SubstMap& map, const VarSet& vars) {
  for (const auto& [v, t] : map)
    if (vars.count(v)) return true;
  return false;
}

inline ProgramPtr substitute_program(const ProgramPtr& p, const SubstMap& map, bool* renamed) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return mk_assign(p->var, substitute(p->term, map, renamed));
    case ProgramTag::Test:
      return mk_test(substitute(p->fml, map, renamed));
    case ProgramTag::DAP:
      return mk_dap(p->vars, substitute(p->fml, map, renamed));
    case ProgramTag::Seq:
      return mk_seq(substitute_program(p->a, map, renamed),
                    substitute_program(p->b, map, renamed));
    case ProgramTag::Choice:
      return mk_choice(substitute_program(p->a, map, renamed),
                       substitute_program(p->b, map, renamed));
    case ProgramTag::Star:
      return mk_star(substitute_program(p->a, map, renamed));
  }
  return p;
}

}  // namespace detail

inline TermPtr substitute(const TermPtr& t, const SubstMap& map, bool* renamed) {
  if (map.empty()) return t;
  switch (t->tag) {
    case TermTag::Var: {
      auto it = map.find(Var(t->name, false));
      return it == map.end() ? t : it->second;
    }
    case TermTag::DiffVar: {
      auto it = map.find(Var(t->name, true));
      return it == map.end() ? t : it->second;
    }
    case TermTag::Const:
      return t;
    case TermTag::Func:
    case TermTag::Plus:
    case TermTag::Times: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(substitute(k, map, renamed));
      Term out = *t;
      out.kids = std::move(kids);
      return std::make_shared<Term>(std::move(out));
    }
    case TermTag::Differential: {
      VarSet reads = free_vars(t);  // FV(e) and the primes of FV(e)
      if (detail::map_touches(map, reads))
        fail(ErrorKind::Unsupported,
             "substitution under an unexpanded differential term; expand (e)' first");
      return t;
    }
  }
  return t;
}

inline FormulaPtr substitute(const FormulaPtr& f, const SubstMap& map, bool* renamed) {
  if (map.empty()) return f;
  switch (f->tag) {
    case FormulaTag::Cmp:
      return mk_cmp(f->op, substitute(f->lhs, map, renamed), substitute(f->rhs, map, renamed));
    case FormulaTag::Pred: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(substitute(a, map, renamed));
      return mk_pred(f->name, std::move(args));
    }
    case FormulaTag::Not:
      return mk_not(substitute(f->a, map, renamed));
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      return mk_binary(f->tag, substitute(f->a, map, renamed), substitute(f->b, map, renamed));
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      SubstMap inner = map;
      inner.erase(f->var);
      if (inner.empty()) return f;
      // Only entries whose variable actually occurs free in the body matter
      // for the capture check.
      VarSet body_free = free_vars(f->a);
      VarSet incoming;
      for (const auto& [v, t] : inner)
        if (body_free.count(v)) free_vars(t, incoming);
      if (incoming.count(f->var)) {
        VarSet avoid = all_vars(f->a);
        avoid.insert(incoming.begin(), incoming.end());
        for (const auto& [v, t] : inner) avoid.insert(v);
        Var fresh(fresh_var(avoid, f->var.base), f->var.primed);
        if (renamed) *renamed = true;
        SubstMap rename{{f->var, mk_term_of_var(fresh)}};
        FormulaPtr body = substitute(f->a, rename, nullptr);
        return mk_quant(f->tag, fresh, substitute(body, inner, renamed));
      }
      return mk_quant(f->tag, f->var, substitute(f->a, inner, renamed));
    }
    case FormulaTag::Box:
    case FormulaTag::Diamond: {
      VarSet relevant = free_vars(f);
      SubstMap inner;
      for (const auto& [v, t] : map)
        if (relevant.count(v)) inner.emplace(v, t);
      if (inner.empty()) return f;
      VarSet bound = bound_vars(f->prog);
      if (detail::map_touches(inner, bound))
        fail(ErrorKind::Unsupported,
             "substitution of a program-bound variable under a modality");
      VarSet incoming = detail::map_range_free_vars(inner);
      for (const auto& v : bound)
        if (incoming.count(v))
          fail(ErrorKind::Unsupported,
               "substitution would move a free variable under a binding program");
      return mk_modal(f->tag, detail::substitute_program(f->prog, inner, renamed),
                      substitute(f->a, inner, renamed));
    }
  }
  return f;
}

inline FormulaPtr substitute_one(const FormulaPtr& f, const Var& v, const TermPtr& t,
                                 bool* renamed = nullptr) {
  return substitute(f, SubstMap{{v, t}}, renamed);
}

inline TermPtr substitute_one(const TermPtr& e, const Var& v, const TermPtr& t,
                              bool* renamed = nullptr) {
  return substitute(e, SubstMap{{v, t}}, renamed);
}

}  // namespace dal
