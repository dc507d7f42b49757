#pragma once

// Random tree generator for property tests.  Deterministic under a fixed
// seed; symbol arities are fixed so printed trees re-parse under the
// incremental signature.

#include <random>
#include <string>
#include <vector>

#include "dal/ast.hpp"

namespace dalgen {

using namespace dal;

struct Gen {
  std::mt19937_64 rng;

  explicit Gen(uint64_t seed) : rng(seed) {}

  size_t pick(size_t n) { return static_cast<size_t>(rng() % n); }
  long pick_int(long lo, long hi) { return lo + static_cast<long>(rng() % (hi - lo + 1)); }

  std::string var_name() {
    static const char* names[] = {"x", "y", "z", "v", "w", "lambda", "g"};
    return names[pick(7)];
  }

  Rat rat() {
    long num = pick_int(-6, 6);
    long den = pick_int(1, 4);
    return Rat(num, den);
  }

  TermPtr term(int depth) {
    if (depth <= 0) {
      switch (pick(3)) {
        case 0: return mk_var(var_name());
        case 1: return mk_diffvar(var_name());
        default: return mk_const(rat());
      }
    }
    switch (pick(7)) {
      case 0: return mk_var(var_name());
      case 1: return mk_diffvar(var_name());
      case 2: return mk_const(rat());
      case 3: return mk_plus(term(depth - 1), term(depth - 1));
      case 4: return mk_times(term(depth - 1), term(depth - 1));
      case 5: return mk_differential(term(depth - 1));
      default: {
        if (pick(2)) return mk_func("f", {term(depth - 1)});
        return mk_func("h", {term(depth - 1), term(depth - 1)});
      }
    }
  }

  // Polynomial-only variant over given variables, no primes, no Differential.
  TermPtr poly_term(int depth, const std::vector<std::string>& vars) {
    if (depth <= 0) {
      if (pick(3) == 0) return mk_const(rat());
      return mk_var(vars[pick(vars.size())]);
    }
    switch (pick(4)) {
      case 0: return mk_const(rat());
      case 1: return mk_var(vars[pick(vars.size())]);
      case 2: return mk_plus(poly_term(depth - 1, vars), poly_term(depth - 1, vars));
      default: return mk_times(poly_term(depth - 1, vars), poly_term(depth - 1, vars));
    }
  }

  CmpOp cmp_op() {
    static const CmpOp ops[] = {CmpOp::Le, CmpOp::Lt, CmpOp::Eq,
                                CmpOp::Ne, CmpOp::Ge, CmpOp::Gt};
    return ops[pick(6)];
  }

  FormulaPtr atom(int depth) {
    if (pick(5) == 0) {
      switch (pick(3)) {
        case 0: return mk_pred("P", {});
        case 1: return mk_pred("p", {term(depth)});
        default: return mk_pred("q", {term(depth), term(depth)});
      }
    }
    return mk_cmp(cmp_op(), term(depth), term(depth));
  }

  FormulaPtr formula(int depth, bool first_order = false) {
    if (depth <= 0) return atom(0);
    switch (pick(first_order ? 8 : 10)) {
      case 0: return atom(depth - 1);
      case 1: return mk_and(formula(depth - 1, first_order), formula(depth - 1, first_order));
      case 2: return mk_or(formula(depth - 1, first_order), formula(depth - 1, first_order));
      case 3: return mk_not(formula(depth - 1, first_order));
      case 4: return mk_imply(formula(depth - 1, first_order), formula(depth - 1, first_order));
      case 5: return mk_equiv(formula(depth - 1, first_order), formula(depth - 1, first_order));
      case 6:
        return mk_forall(Var(var_name(), pick(4) == 0), formula(depth - 1, first_order));
      case 7:
        return mk_exists(Var(var_name(), pick(4) == 0), formula(depth - 1, first_order));
      case 8: return mk_box(program(depth - 1), formula(depth - 1));
      default: return mk_diamond(program(depth - 1), formula(depth - 1));
    }
  }

  // Quantifier-free, modality-free, function-free semi-algebraic formula.
  FormulaPtr semi_algebraic(int depth, const std::vector<std::string>& vars,
                            bool with_primes = true) {
    if (depth <= 0) {
      TermPtr l = poly_term(1, vars);
      TermPtr r = poly_term(1, vars);
      if (with_primes && pick(3) == 0) l = mk_plus(l, mk_diffvar(vars[pick(vars.size())]));
      return mk_cmp(cmp_op(), l, r);
    }
    switch (pick(4)) {
      case 0: {
        TermPtr l = poly_term(depth, vars);
        TermPtr r = poly_term(depth, vars);
        if (with_primes && pick(3) == 0) l = mk_plus(l, mk_diffvar(vars[pick(vars.size())]));
        return mk_cmp(cmp_op(), l, r);
      }
      case 1:
        return mk_and(semi_algebraic(depth - 1, vars, with_primes),
                      semi_algebraic(depth - 1, vars, with_primes));
      case 2:
        return mk_or(semi_algebraic(depth - 1, vars, with_primes),
                     semi_algebraic(depth - 1, vars, with_primes));
      default:
        return mk_not(semi_algebraic(depth - 1, vars, with_primes));
    }
  }

  ProgramPtr program(int depth) {
    if (depth <= 0) return mk_assign(Var(var_name(), pick(4) == 0), term(0));
    switch (pick(6)) {
      case 0: return mk_assign(Var(var_name(), pick(4) == 0), term(depth - 1));
      case 1: return mk_test(formula(depth - 1, true));
      case 2: {
        std::vector<std::string> vars{"x"};
        if (pick(2)) vars.push_back("y");
        return mk_dap(vars, formula(depth - 1, true));
      }
      case 3: return mk_seq(program(depth - 1), program(depth - 1));
      case 4: return mk_choice(program(depth - 1), program(depth - 1));
      default: return mk_star(program(depth - 1));
    }
  }
};

}  // namespace dalgen
