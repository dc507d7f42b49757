#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dal/errors.hpp"
#include "dal/rational.hpp"

namespace dal {

// ---------- Variables ----------

// A variable is a base identifier plus a primed flag: x and x' are distinct,
// independently valued variables.  Primed variables exist only in this form;
// there is no x''.
struct Var {
  std::string base;
  bool primed = false;

  Var() = default;
  Var(std::string b, bool p = false) : base(std::move(b)), primed(p) {}

  Var prime() const { return Var(base, true); }
  Var unprime() const { return Var(base, false); }

  std::string str() const { return primed ? base + "'" : base; }

  friend bool operator==(const Var& a, const Var& b) {
    return a.primed == b.primed && a.base == b.base;
  }
  friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }
  friend bool operator<(const Var& a, const Var& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.primed < b.primed;
  }
};

using VarSet = std::set<Var>;

// ---------- Terms ----------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermTag { Var, DiffVar, Const, Func, Plus, Times, Differential };

struct Term {
  TermTag tag;
  std::string name;           // Var/DiffVar base name, Func symbol
  Rat value;                  // Const
  std::vector<TermPtr> kids;  // Func args; Plus/Times: [l,r]; Differential: [inner]

  const TermPtr& left() const { return kids[0]; }
  const TermPtr& right() const { return kids[1]; }
  const TermPtr& inner() const { return kids[0]; }
};

inline TermPtr mk_var(const std::string& name) {
  return std::make_shared<Term>(Term{TermTag::Var, name, Rat(), {}});
}
inline TermPtr mk_diffvar(const std::string& base) {
  return std::make_shared<Term>(Term{TermTag::DiffVar, base, Rat(), {}});
}
inline TermPtr mk_term_of_var(const Var& v) {
  return v.primed ? mk_diffvar(v.base) : mk_var(v.base);
}
inline TermPtr mk_const(Rat q) {
  return std::make_shared<Term>(Term{TermTag::Const, "", std::move(q), {}});
}
inline TermPtr mk_const(long n) { return mk_const(Rat(n)); }
inline TermPtr mk_func(const std::string& symbol, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{TermTag::Func, symbol, Rat(), std::move(args)});
}
inline TermPtr mk_plus(TermPtr l, TermPtr r) {
  return std::make_shared<Term>(Term{TermTag::Plus, "", Rat(), {std::move(l), std::move(r)}});
}
inline TermPtr mk_times(TermPtr l, TermPtr r) {
  return std::make_shared<Term>(Term{TermTag::Times, "", Rat(), {std::move(l), std::move(r)}});
}
inline TermPtr mk_differential(TermPtr e) {
  return std::make_shared<Term>(Term{TermTag::Differential, "", Rat(), {std::move(e)}});
}

// -e with the sign folded into a leading constant, matching the parse of the
// printed spelling.
inline TermPtr mk_neg(const TermPtr& t) {
  if (t->tag == TermTag::Const) return mk_const(Rat(-t->value));
  if (t->tag == TermTag::Times && t->kids[0]->tag == TermTag::Const) {
    Rat c = -t->kids[0]->value;
    if (c == 1) return t->kids[1];
    return mk_times(mk_const(c), t->kids[1]);
  }
  return mk_times(mk_const(-1), t);
}

inline bool is_const(const TermPtr& t, long v) {
  return t->tag == TermTag::Const && t->value == v;
}

// ---------- Formulas ----------

struct Formula;
struct Program;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;

enum class CmpOp { Le, Lt, Eq, Ne, Ge, Gt };

inline const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

enum class FormulaTag { Cmp, Pred, And, Or, Not, Imply, Equiv, Forall, Exists, Box, Diamond };

struct Formula {
  FormulaTag tag;
  CmpOp op = CmpOp::Le;        // Cmp
  TermPtr lhs, rhs;            // Cmp
  std::string name;            // Pred symbol
  std::vector<TermPtr> args;   // Pred args
  FormulaPtr a, b;             // connectives (Not uses a only), quantifier body in a
  Var var;                     // Forall/Exists
  ProgramPtr prog;             // Box/Diamond
};

inline FormulaPtr mk_cmp(CmpOp op, TermPtr l, TermPtr r) {
  Formula f;
  f.tag = FormulaTag::Cmp;
  f.op = op;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_pred(const std::string& symbol, std::vector<TermPtr> args) {
  Formula f;
  f.tag = FormulaTag::Pred;
  f.name = symbol;
  f.args = std::move(args);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_binary(FormulaTag tag, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.tag = tag;
  f.a = std::move(a);
  f.b = std::move(b);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return mk_binary(FormulaTag::And, std::move(a), std::move(b));
}
inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return mk_binary(FormulaTag::Or, std::move(a), std::move(b));
}
inline FormulaPtr mk_imply(FormulaPtr a, FormulaPtr b) {
  return mk_binary(FormulaTag::Imply, std::move(a), std::move(b));
}
inline FormulaPtr mk_equiv(FormulaPtr a, FormulaPtr b) {
  return mk_binary(FormulaTag::Equiv, std::move(a), std::move(b));
}
inline FormulaPtr mk_not(FormulaPtr a) {
  Formula f;
  f.tag = FormulaTag::Not;
  f.a = std::move(a);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_quant(FormulaTag tag, const Var& v, FormulaPtr body) {
  Formula f;
  f.tag = tag;
  f.var = v;
  f.a = std::move(body);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_forall(const Var& v, FormulaPtr body) {
  return mk_quant(FormulaTag::Forall, v, std::move(body));
}
inline FormulaPtr mk_exists(const Var& v, FormulaPtr body) {
  return mk_quant(FormulaTag::Exists, v, std::move(body));
}
inline FormulaPtr mk_modal(FormulaTag tag, ProgramPtr prog, FormulaPtr post) {
  Formula f;
  f.tag = tag;
  f.prog = std::move(prog);
  f.a = std::move(post);
  return std::make_shared<Formula>(std::move(f));
}
inline FormulaPtr mk_box(ProgramPtr prog, FormulaPtr post) {
  return mk_modal(FormulaTag::Box, std::move(prog), std::move(post));
}
inline FormulaPtr mk_diamond(ProgramPtr prog, FormulaPtr post) {
  return mk_modal(FormulaTag::Diamond, std::move(prog), std::move(post));
}

// ---------- Programs ----------

enum class ProgramTag { Assign, Test, DAP, Seq, Choice, Star };

struct Program {
  ProgramTag tag;
  Var var;                        // Assign target (may be primed)
  TermPtr term;                   // Assign rhs
  FormulaPtr fml;                 // Test condition / DAP constraint
  std::vector<std::string> vars;  // DAP tuple (base identifiers)
  ProgramPtr a, b;                // Seq/Choice; Star uses a
};

bool is_first_order(const FormulaPtr& f);

inline ProgramPtr mk_assign(const Var& v, TermPtr rhs) {
  Program p;
  p.tag = ProgramTag::Assign;
  p.var = v;
  p.term = std::move(rhs);
  return std::make_shared<Program>(std::move(p));
}
inline ProgramPtr mk_test(FormulaPtr cond) {
  Program p;
  p.tag = ProgramTag::Test;
  p.fml = std::move(cond);
  return std::make_shared<Program>(std::move(p));
}
inline ProgramPtr mk_dap(std::vector<std::string> vars, FormulaPtr constraint, long position = -1) {
  if (vars.empty()) fail(ErrorKind::Parse, "differential-algebraic program with empty variable tuple", position);
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second)
      fail(ErrorKind::Parse, "duplicate variable '" + v + "' in differential-algebraic tuple", position);
  }
  if (!is_first_order(constraint))
    fail(ErrorKind::Parse, "differential-algebraic constraint contains a modality", position);
  Program p;
  p.tag = ProgramTag::DAP;
  p.vars = std::move(vars);
  p.fml = std::move(constraint);
  return std::make_shared<Program>(std::move(p));
}
inline ProgramPtr mk_seq(ProgramPtr a, ProgramPtr b) {
  Program p;
  p.tag = ProgramTag::Seq;
  p.a = std::move(a);
  p.b = std::move(b);
  return std::make_shared<Program>(std::move(p));
}
inline ProgramPtr mk_choice(ProgramPtr a, ProgramPtr b) {
  Program p;
  p.tag = ProgramTag::Choice;
  p.a = std::move(a);
  p.b = std::move(b);
  return std::make_shared<Program>(std::move(p));
}
inline ProgramPtr mk_star(ProgramPtr a) {
  Program p;
  p.tag = ProgramTag::Star;
  p.a = std::move(a);
  return std::make_shared<Program>(std::move(p));
}

// A formula is first-order when it contains no modality anywhere.
inline bool is_first_order(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Cmp:
    case FormulaTag::Pred:
      return true;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return is_first_order(f->a);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      return is_first_order(f->a) && is_first_order(f->b);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return false;
  }
  return false;
}

// ---------- Structural equality and total order ----------

inline int compare(const TermPtr& a, const TermPtr& b);

inline int compare_int(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

inline int compare_kids(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return compare_int(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

// Total order used for canonical factor/monomial sorting: constants first,
// then plain variables, then differential variables, then the rest.
inline int compare(const TermPtr& a, const TermPtr& b) {
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  switch (a->tag) {
    case TermTag::Var:
    case TermTag::DiffVar:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case TermTag::Const:
      return a->value < b->value ? -1 : (a->value == b->value ? 0 : 1);
    case TermTag::Func: {
      int c = a->name.compare(b->name);
      if (c != 0) return c < 0 ? -1 : 1;
      return compare_kids(a->kids, b->kids);
    }
    case TermTag::Plus:
    case TermTag::Times:
    case TermTag::Differential:
      return compare_kids(a->kids, b->kids);
  }
  return 0;
}

inline bool equal(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }

bool equal(const FormulaPtr& a, const FormulaPtr& b);

inline bool equal(const ProgramPtr& a, const ProgramPtr& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ProgramTag::Assign:
      return a->var == b->var && equal(a->term, b->term);
    case ProgramTag::Test:
      return equal(a->fml, b->fml);
    case ProgramTag::DAP:
      return a->vars == b->vars && equal(a->fml, b->fml);
    case ProgramTag::Seq:
    case ProgramTag::Choice:
      return equal(a->a, b->a) && equal(a->b, b->b);
    case ProgramTag::Star:
      return equal(a->a, b->a);
  }
  return false;
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FormulaTag::Cmp:
      return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case FormulaTag::Pred: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
      return true;
    }
    case FormulaTag::Not:
      return equal(a->a, b->a);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      return equal(a->a, b->a) && equal(a->b, b->b);
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return a->var == b->var && equal(a->a, b->a);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return equal(a->prog, b->prog) && equal(a->a, b->a);
  }
  return false;
}

// ---------- Conjunction chains ----------

// The concrete grammar right-associates '&', so every schema instantiation
// builds conjunctions in the same right-leaning shape.
inline void conjuncts_of(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->tag == FormulaTag::And) {
    conjuncts_of(f->a, out);
    conjuncts_of(f->b, out);
  } else {
    out.push_back(f);
  }
}

inline std::vector<FormulaPtr> conjuncts_of(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  conjuncts_of(f, out);
  return out;
}

inline FormulaPtr mk_and_chain(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) fail(ErrorKind::SchemaMismatch, "empty conjunction");
  FormulaPtr acc = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) acc = mk_and(parts[i], acc);
  return acc;
}

inline FormulaPtr mk_or_chain(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) fail(ErrorKind::SchemaMismatch, "empty disjunction");
  FormulaPtr acc = parts.back();
  for (size_t i = parts.size() - 1; i-- > 0;) acc = mk_or(parts[i], acc);
  return acc;
}

// ---------- Desugaring ----------

FormulaPtr desugar(const FormulaPtr& f);
ProgramPtr desugar(const ProgramPtr& p);

// Fixed desugarings: A|B = !(!A & !B), A->B = !(A & !B), A<->B = (A->B)&(B->A),
// \exists x F = !\forall x !F, <a>F = ![a]!F, and all comparisons over <= and =.
inline FormulaPtr desugar(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Cmp: {
      switch (f->op) {
        case CmpOp::Le: return mk_cmp(CmpOp::Le, f->lhs, f->rhs);
        case CmpOp::Eq: return mk_cmp(CmpOp::Eq, f->lhs, f->rhs);
        case CmpOp::Ge: return mk_cmp(CmpOp::Le, f->rhs, f->lhs);
        case CmpOp::Lt: return mk_not(mk_cmp(CmpOp::Le, f->rhs, f->lhs));
        case CmpOp::Gt: return mk_not(mk_cmp(CmpOp::Le, f->lhs, f->rhs));
        case CmpOp::Ne: return mk_not(mk_cmp(CmpOp::Eq, f->lhs, f->rhs));
      }
      return f;
    }
    case FormulaTag::Pred:
      return f;
    case FormulaTag::Not:
      return mk_not(desugar(f->a));
    case FormulaTag::And:
      return mk_and(desugar(f->a), desugar(f->b));
    case FormulaTag::Or:
      return mk_not(mk_and(mk_not(desugar(f->a)), mk_not(desugar(f->b))));
    case FormulaTag::Imply:
      return mk_not(mk_and(desugar(f->a), mk_not(desugar(f->b))));
    case FormulaTag::Equiv: {
      FormulaPtr l = desugar(f->a);
      FormulaPtr r = desugar(f->b);
      return mk_and(mk_not(mk_and(l, mk_not(r))), mk_not(mk_and(r, mk_not(l))));
    }
    case FormulaTag::Forall:
      return mk_forall(f->var, desugar(f->a));
    case FormulaTag::Exists:
      return mk_not(mk_forall(f->var, mk_not(desugar(f->a))));
    case FormulaTag::Box:
      return mk_box(desugar(f->prog), desugar(f->a));
    case FormulaTag::Diamond:
      return mk_not(mk_box(desugar(f->prog), mk_not(desugar(f->a))));
  }
  return f;
}

inline ProgramPtr desugar(const ProgramPtr& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return p;
    case ProgramTag::Test:
      return mk_test(desugar(p->fml));
    case ProgramTag::DAP:
      return mk_dap(p->vars, desugar(p->fml));
    case ProgramTag::Seq:
      return mk_seq(desugar(p->a), desugar(p->b));
    case ProgramTag::Choice:
      return mk_choice(desugar(p->a), desugar(p->b));
    case ProgramTag::Star:
      return mk_star(desugar(p->a));
  }
  return p;
}

// Kernel equality: two formulas are the same proposition for the checker iff
// their desugared trees coincide.
inline bool kernel_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (equal(a, b)) return true;
  return equal(desugar(a), desugar(b));
}

// Removes !!F everywhere, including under programs.
FormulaPtr strip_double_negation(const FormulaPtr& f);
inline ProgramPtr strip_double_negation(const ProgramPtr& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return p;
    case ProgramTag::Test:
      return mk_test(strip_double_negation(p->fml));
    case ProgramTag::DAP:
      return mk_dap(p->vars, strip_double_negation(p->fml));
    case ProgramTag::Seq:
      return mk_seq(strip_double_negation(p->a), strip_double_negation(p->b));
    case ProgramTag::Choice:
      return mk_choice(strip_double_negation(p->a), strip_double_negation(p->b));
    case ProgramTag::Star:
      return mk_star(strip_double_negation(p->a));
  }
  return p;
}

inline FormulaPtr strip_double_negation(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Cmp:
    case FormulaTag::Pred:
      return f;
    case FormulaTag::Not: {
      if (f->a->tag == FormulaTag::Not) return strip_double_negation(f->a->a);
      return mk_not(strip_double_negation(f->a));
    }
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      return mk_binary(f->tag, strip_double_negation(f->a), strip_double_negation(f->b));
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return mk_quant(f->tag, f->var, strip_double_negation(f->a));
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return mk_modal(f->tag, strip_double_negation(f->prog), strip_double_negation(f->a));
  }
  return f;
}

// ---------- Signature ----------

// Function and predicate symbols live in separate namespaces; each symbol has
// a single arity across the whole development.
class Signature {
 public:
  void declare_func(const std::string& symbol, size_t arity, long position = -1) {
    declare(funcs_, "function", symbol, arity, position);
  }
  void declare_pred(const std::string& symbol, size_t arity, long position = -1) {
    declare(preds_, "predicate", symbol, arity, position);
  }

  const std::map<std::string, size_t>& funcs() const { return funcs_; }
  const std::map<std::string, size_t>& preds() const { return preds_; }

  // Walks a tree and folds every symbol occurrence into the table.
  void absorb(const TermPtr& t, long position = -1) {
    if (t->tag == TermTag::Func) declare_func(t->name, t->kids.size(), position);
    for (const auto& k : t->kids) absorb(k, position);
  }
  void absorb(const FormulaPtr& f, long position = -1);
  void absorb(const ProgramPtr& p, long position = -1) {
    switch (p->tag) {
      case ProgramTag::Assign:
        absorb(p->term, position);
        break;
      case ProgramTag::Test:
      case ProgramTag::DAP:
        absorb(p->fml, position);
        break;
      case ProgramTag::Seq:
      case ProgramTag::Choice:
        absorb(p->a, position);
        absorb(p->b, position);
        break;
      case ProgramTag::Star:
        absorb(p->a, position);
        break;
    }
  }

 private:
  static void declare(std::map<std::string, size_t>& table, const char* what,
                      const std::string& symbol, size_t arity, long position) {
    auto [it, inserted] = table.emplace(symbol, arity);
    if (!inserted && it->second != arity) {
      fail(ErrorKind::ArityMismatch,
           std::string(what) + " symbol '" + symbol + "' used with arity " +
               std::to_string(arity) + " but declared with arity " + std::to_string(it->second),
           position);
    }
  }

  std::map<std::string, size_t> funcs_;
  std::map<std::string, size_t> preds_;
};

inline void Signature::absorb(const FormulaPtr& f, long position) {
  switch (f->tag) {
    case FormulaTag::Cmp:
      absorb(f->lhs, position);
      absorb(f->rhs, position);
      break;
    case FormulaTag::Pred:
      declare_pred(f->name, f->args.size(), position);
      for (const auto& arg : f->args) absorb(arg, position);
      break;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      absorb(f->a, position);
      break;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imply:
    case FormulaTag::Equiv:
      absorb(f->a, position);
      absorb(f->b, position);
      break;
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      absorb(f->prog, position);
      absorb(f->a, position);
      break;
  }
}

}  // namespace dal
