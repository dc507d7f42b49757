#pragma once

#include <string>
#include <vector>

#include "dal/ast.hpp"

namespace dal {

// ---------- Free variables ----------

// The differential (e)' reads every free variable of e together with its
// prime, since its value is sum over x of x' * de/dx.
inline void free_vars(const TermPtr& t, VarSet& out) {
  switch (t->tag) {
    case TermTag::Var:
      out.insert(Var(t->name, false));
      break;
    case TermTag::DiffVar:
      out.insert(Var(t->name, true));
      break;
    case TermTag::Const:
      break;
    case TermTag::Func:
    case TermTag::Plus:
    case TermTag::Times:
      for (const auto& k : t->kids) free_vars(k, out);
      break;
    case TermTag::Differential: {
      VarSet inner;
      free_vars(t->inner(), inner);
      for (const auto& v : inner) {
        out.insert(v);
        out.insert(v.prime());
      }
      break;
    }
  }
}

inline VarSet free_vars(const TermPtr& t) {
  VarSet out;
  free_vars(t, out);
  return out;
}

void free_vars(const FormulaPtr& f, VarSet& out);

// FV of a differential-algebraic program includes the whole evolved tuple and
// its primes; composite programs take plain unions.
inline void free_vars(const ProgramPtr& p, VarSet& out) {
  switch (p->tag) {
    case ProgramTag::Assign:
      free_vars(p->term, out);
      break;
    case ProgramTag::Test:
      free_vars(p->fml, out);
      break;
    case ProgramTag::DAP:
      free_vars(p->fml, out);
      for (const auto& x : p->vars) {
        out.insert(Var(x, false));
        out.insert(Var(x, true));
      }
      break;
    case ProgramTag::Seq:
    case ProgramTag::Choice:
      free_vars(p->a, out);
      free_vars(p->b, out);
      break;
    case ProgramTag::Star:
      free_vars(p->a, out);
      break;
  }
}

inline void free_vars(const FormulaPtr& f, VarSet& out) {
  switch (f->tag) {
    case FormulaTag::Cmp:
      free_vars(f->lhs, out);
      free_vars(f->rhs, out);
      break;
    case FormulaTag::Pred:
      for (const auto& arg : f->args) free_vars(arg, out);
      break;
    case FormulaTag::Not:
      free_vars(f->a, out);
      break;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      free_vars(f->a, out);
      free_vars(f->b, out);
      break;
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      VarSet body;
      free_vars(f->a, body);
      body.erase(f->var);
      out.insert(body.begin(), body.end());
      break;
    }
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      free_vars(f->prog, out);
      free_vars(f->a, out);
      break;
  }
}

inline VarSet free_vars(const FormulaPtr& f) {
  VarSet out;
  free_vars(f, out);
  return out;
}

inline VarSet free_vars(const ProgramPtr& p) {
  VarSet out;
  free_vars(p, out);
  return out;
}

// ---------- Bound variables ----------

inline void bound_vars(const ProgramPtr& p, VarSet& out) {
  switch (p->tag) {
    case ProgramTag::Assign:
      out.insert(p->var);
      break;
    case ProgramTag::Test:
      break;
    case ProgramTag::DAP:
      for (const auto& x : p->vars) {
        out.insert(Var(x, false));
        out.insert(Var(x, true));
      }
      break;
    case ProgramTag::Seq:
    case ProgramTag::Choice:
      bound_vars(p->a, out);
      bound_vars(p->b, out);
      break;
    case ProgramTag::Star:
      bound_vars(p->a, out);
      break;
  }
}

inline VarSet bound_vars(const ProgramPtr& p) {
  VarSet out;
  bound_vars(p, out);
  return out;
}

// ---------- All occurrences ----------

// Every variable occurring anywhere, free or bound.  Ghost freshness is
// decided against this set, not just against free variables.
void all_vars(const FormulaPtr& f, VarSet& out);

inline void all_vars(const TermPtr& t, VarSet& out) { free_vars(t, out); }

inline void all_vars(const ProgramPtr& p, VarSet& out) {
  switch (p->tag) {
    case ProgramTag::Assign:
      out.insert(p->var);
      all_vars(p->term, out);
      break;
    case ProgramTag::Test:
      all_vars(p->fml, out);
      break;
    case ProgramTag::DAP:
      all_vars(p->fml, out);
      for (const auto& x : p->vars) {
        out.insert(Var(x, false));
        out.insert(Var(x, true));
      }
      break;
    case ProgramTag::Seq:
    case ProgramTag::Choice:
      all_vars(p->a, out);
      all_vars(p->b, out);
      break;
    case ProgramTag::Star:
      all_vars(p->a, out);
      break;
  }
}

inline void all_vars(const FormulaPtr& f, VarSet& out) {
  switch (f->tag) {
    case FormulaTag::Cmp:
      all_vars(f->lhs, out);
      all_vars(f->rhs, out);
      break;
    case FormulaTag::Pred:
      for (const auto& arg : f->args) all_vars(arg, out);
      break;
    case FormulaTag::Not:
      all_vars(f->a, out);
      break;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      all_vars(f->a, out);
      all_vars(f->b, out);
      break;
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      out.insert(f->var);
      all_vars(f->a, out);
      break;
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      all_vars(f->prog, out);
      all_vars(f->a, out);
      break;
  }
}

inline VarSet all_vars(const FormulaPtr& f) {
  VarSet out;
  all_vars(f, out);
  return out;
}

// ---------- Fresh names ----------

// Returns one fresh base identifier per requested base name; a name is fresh
// when neither it nor its prime is in `avoid`.  Scans numeric suffixes from
// the bare name upward, so results are deterministic.
inline std::vector<std::string> fresh_vars(VarSet avoid, const std::vector<std::string>& bases) {
  std::vector<std::string> out;
  out.reserve(bases.size());
  for (const auto& base : bases) {
    std::string chosen;
    for (long suffix = 0;; ++suffix) {
      std::string candidate = suffix == 0 ? base : base + std::to_string(suffix);
      if (!avoid.count(Var(candidate, false)) && !avoid.count(Var(candidate, true))) {
        chosen = candidate;
        break;
      }
    }
    avoid.insert(Var(chosen, false));
    avoid.insert(Var(chosen, true));
    out.push_back(chosen);
  }
  return out;
}

inline std::string fresh_var(const VarSet& avoid, const std::string& base) {
  return fresh_vars(avoid, {base})[0];
}

}  // namespace dal
