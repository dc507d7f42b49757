#pragma once

#include <sstream>
#include <string>

#include "dal/ast.hpp"

namespace dal {

// Canonical concrete syntax.  print followed by parse is the identity on
// every tree; the grammar right-associates all binary operators, so
// right-leaning chains print without parentheses.

namespace detail {

// negative-headed: a term whose canonical spelling starts with unary minus.
inline bool negative_headed(const TermPtr& t) {
  if (t->tag == TermTag::Const) return t->value < 0;
  if (t->tag == TermTag::Times && t->kids[0]->tag == TermTag::Const)
    return t->kids[0]->value < 0 && t->kids[1]->tag != TermTag::Const;
  return false;
}

// Strips the leading minus of a negative-headed term.
inline TermPtr positive_part(const TermPtr& t) {
  if (t->tag == TermTag::Const) return mk_const(Rat(-t->value));
  Rat c = -t->kids[0]->value;
  if (c == 1) return t->kids[1];
  return mk_times(mk_const(c), t->kids[1]);
}

// term precedence: 1 sum-like (incl. negative-headed), 2 product, 4 atom
inline int term_prec(const TermPtr& t) {
  if (negative_headed(t)) return 1;
  switch (t->tag) {
    case TermTag::Plus: return 1;
    case TermTag::Times: return 2;
    default: return 4;
  }
}

void print_term(std::ostream& os, const TermPtr& t, int min_prec);

inline void print_product(std::ostream& os, const TermPtr& t) {
  // Collect the right spine and re-sugar runs of equal factors as powers.
  std::vector<TermPtr> factors;
  TermPtr cur = t;
  while (cur->tag == TermTag::Times) {
    factors.push_back(cur->left());
    cur = cur->right();
  }
  factors.push_back(cur);
  bool first = true;
  for (size_t i = 0; i < factors.size();) {
    size_t run = 1;
    while (i + run < factors.size() && equal(factors[i], factors[i + run])) ++run;
    if (!first) os << "*";
    first = false;
    print_term(os, factors[i], 3);
    if (run > 1) os << "^" << run;
    i += run;
  }
}

inline void print_term(std::ostream& os, const TermPtr& t, int min_prec) {
  if (term_prec(t) < min_prec) {
    os << "(";
    print_term(os, t, 0);
    os << ")";
    return;
  }
  if (negative_headed(t)) {
    os << "-";
    print_term(os, positive_part(t), 2);
    return;
  }
  switch (t->tag) {
    case TermTag::Var:
      os << t->name;
      return;
    case TermTag::DiffVar:
      os << t->name << "'";
      return;
    case TermTag::Const:
      os << rat_to_string(t->value);
      return;
    case TermTag::Func: {
      os << t->name << "(";
      for (size_t i = 0; i < t->kids.size(); ++i) {
        if (i) os << ",";
        print_term(os, t->kids[i], 0);
      }
      os << ")";
      return;
    }
    case TermTag::Differential:
      os << "(";
      print_term(os, t->inner(), 0);
      os << ")'";
      return;
    case TermTag::Times:
      print_product(os, t);
      return;
    case TermTag::Plus: {
      std::vector<TermPtr> addends;
      TermPtr cur = t;
      while (cur->tag == TermTag::Plus) {
        addends.push_back(cur->left());
        cur = cur->right();
      }
      addends.push_back(cur);
      for (size_t i = 0; i < addends.size(); ++i) {
        const TermPtr& u = addends[i];
        if (i == 0) {
          print_term(os, u, 2);
        } else if (negative_headed(u)) {
          os << "-";
          print_term(os, positive_part(u), 2);
        } else {
          os << "+";
          print_term(os, u, 2);
        }
      }
      return;
    }
  }
}

// formula precedence: 1 <->, 2 ->, 3 |, 4 &, 5 prefix, 6 atom
inline int formula_prec(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Equiv: return 1;
    case FormulaTag::Imply: return 2;
    case FormulaTag::Or: return 3;
    case FormulaTag::And: return 4;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
    case FormulaTag::Box:
    case FormulaTag::Diamond: return 5;
    case FormulaTag::Cmp:
    case FormulaTag::Pred: return 6;
  }
  return 6;
}

// program precedence: 1 ++, 2 ;, 3 *, 4 atom
inline int program_prec(const ProgramPtr& p) {
  switch (p->tag) {
    case ProgramTag::Choice: return 1;
    case ProgramTag::Seq: return 2;
    case ProgramTag::Star: return 3;
    default: return 4;
  }
}

void print_formula(std::ostream& os, const FormulaPtr& f, int min_prec);

inline void print_program(std::ostream& os, const ProgramPtr& p, int min_prec) {
  if (program_prec(p) < min_prec) {
    os << "(";
    print_program(os, p, 0);
    os << ")";
    return;
  }
  switch (p->tag) {
    case ProgramTag::Assign:
      os << p->var.str() << ":=";
      print_term(os, p->term, 0);
      return;
    case ProgramTag::Test:
      os << "?";
      print_formula(os, p->fml, 0);
      return;
    case ProgramTag::DAP: {
      os << "{";
      for (size_t i = 0; i < p->vars.size(); ++i) {
        if (i) os << ",";
        os << p->vars[i];
      }
      os << " & ";
      print_formula(os, p->fml, 0);
      os << "}";
      return;
    }
    case ProgramTag::Seq:
      print_program(os, p->a, 3);
      os << ";";
      print_program(os, p->b, 2);
      return;
    case ProgramTag::Choice:
      print_program(os, p->a, 2);
      os << " ++ ";
      print_program(os, p->b, 1);
      return;
    case ProgramTag::Star:
      print_program(os, p->a, 4);
      os << "*";
      return;
  }
}

inline void print_formula(std::ostream& os, const FormulaPtr& f, int min_prec) {
  if (formula_prec(f) < min_prec) {
    os << "(";
    print_formula(os, f, 0);
    os << ")";
    return;
  }
  switch (f->tag) {
    case FormulaTag::Cmp:
      print_term(os, f->lhs, 0);
      os << cmp_op_text(f->op);
      print_term(os, f->rhs, 0);
      return;
    case FormulaTag::Pred: {
      os << f->name;
      if (!f->args.empty()) {
        os << "(";
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << ",";
          print_term(os, f->args[i], 0);
        }
        os << ")";
      }
      return;
    }
    case FormulaTag::Not:
      os << "!";
      print_formula(os, f->a, 5);
      return;
    case FormulaTag::And:
      print_formula(os, f->a, 5);
      os << " & ";
      print_formula(os, f->b, 4);
      return;
    case FormulaTag::Or:
      print_formula(os, f->a, 4);
      os << " | ";
      print_formula(os, f->b, 3);
      return;
    case FormulaTag::Imply:
      print_formula(os, f->a, 3);
      os << " -> ";
      print_formula(os, f->b, 2);
      return;
    case FormulaTag::Equiv:
      print_formula(os, f->a, 2);
      os << " <-> ";
      print_formula(os, f->b, 1);
      return;
    case FormulaTag::Forall:
      os << "\\forall " << f->var.str() << " ";
      print_formula(os, f->a, 5);
      return;
    case FormulaTag::Exists:
      os << "\\exists " << f->var.str() << " ";
      print_formula(os, f->a, 5);
      return;
    case FormulaTag::Box:
      os << "[";
      print_program(os, f->prog, 0);
      os << "]";
      print_formula(os, f->a, 5);
      return;
    case FormulaTag::Diamond:
      os << "<";
      print_program(os, f->prog, 0);
      os << ">";
      print_formula(os, f->a, 5);
      return;
  }
}

}  // namespace detail

inline std::string print(const TermPtr& t) {
  std::ostringstream os;
  detail::print_term(os, t, 0);
  return os.str();
}

inline std::string print(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

inline std::string print(const ProgramPtr& p) {
  std::ostringstream os;
  detail::print_program(os, p, 0);
  return os.str();
}

}  // namespace dal
