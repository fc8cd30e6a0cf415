// SPDX-License-Identifier: MIT
#include "glp/prover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "glp/constraints.hpp"
#include "glp/errors.hpp"
#include "glp/herbrand.hpp"

namespace glp {

namespace {

// ---------------------------------------------------------------------
// Linear forms c + sum coef_k * x_k over integer-valued measure variables,
// used both for level values and for inequality rows (meaning form <= 0).

struct LinForm {
  long long c = 0;
  std::map<int, long long> coef;

  LinForm& operator+=(const LinForm& o) {
    c += o.c;
    for (const auto& [v, k] : o.coef) {
      coef[v] += k;
      if (coef[v] == 0) coef.erase(v);
    }
    return *this;
  }
  LinForm& operator-=(const LinForm& o) {
    c -= o.c;
    for (const auto& [v, k] : o.coef) {
      coef[v] -= k;
      if (coef[v] == 0) coef.erase(v);
    }
    return *this;
  }
  void scale(long long n) {
    c *= n;
    if (n == 0) {
      coef.clear();
      return;
    }
    for (auto& [v, k] : coef) k *= n;
  }
  static LinForm constant(long long n) {
    LinForm f;
    f.c = n;
    return f;
  }
  static LinForm variable(int v) {
    LinForm f;
    f.coef[v] = 1;
    return f;
  }
};

LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }

// Integer tightening: dividing a row f <= 0 by the gcd g of its
// coefficients and rounding the constant up preserves exactly the integer
// solutions.
void tighten(LinForm& f) {
  long long g = 0;
  for (const auto& [v, k] : f.coef) g = std::gcd(g, k < 0 ? -k : k);
  if (g <= 1) return;
  for (auto& [v, k] : f.coef) k /= g;
  long long q = f.c >= 0 ? (f.c + g - 1) / g : -((-f.c) / g);
  f.c = q;
}

constexpr long long kOverflow = 1LL << 60;

bool combine(const LinForm& pos, long long a, const LinForm& neg, long long b,
             LinForm& out) {
  // pos has coefficient a > 0 on the pivot, neg has b < 0; the combination
  // pos*(-b) + neg*a cancels it.  Fails on overflow.
  auto mixed = [&](long long x, long long y, long long u,
                   long long v) -> std::optional<long long> {
    __int128 r = (__int128)x * y + (__int128)u * v;
    if (r > kOverflow || r < -kOverflow) return std::nullopt;
    return (long long)r;
  };
  out = LinForm{};
  auto oc = mixed(pos.c, -b, neg.c, a);
  if (!oc) return false;
  out.c = *oc;
  std::set<int> vars;
  for (const auto& [v, k] : pos.coef) vars.insert(v);
  for (const auto& [v, k] : neg.coef) vars.insert(v);
  for (int v : vars) {
    auto ip = pos.coef.find(v);
    auto in = neg.coef.find(v);
    auto ov = mixed(ip == pos.coef.end() ? 0 : ip->second, -b,
                    in == neg.coef.end() ? 0 : in->second, a);
    if (!ov) return false;
    if (*ov != 0) out.coef[v] = *ov;
  }
  return true;
}

// Fourier-Motzkin elimination.  true means the system {f <= 0} has no
// integer solution (rational infeasibility plus gcd tightening); false
// means feasible or gave up, so never a wrong "proved".
bool fm_infeasible(std::vector<LinForm> rows, std::size_t row_cap) {
  for (LinForm& f : rows) tighten(f);
  while (true) {
    std::map<int, std::pair<int, int>> occ;  // var -> (pos count, neg count)
    std::vector<LinForm> next;
    for (const LinForm& f : rows) {
      if (f.coef.empty()) {
        if (f.c > 0) return true;
        continue;  // satisfied constant row
      }
      for (const auto& [v, k] : f.coef)
        (k > 0 ? occ[v].first : occ[v].second)++;
      next.push_back(f);
    }
    rows = std::move(next);
    if (rows.empty()) return false;

    int best = -1;
    long long best_cost = -1;
    for (const auto& [v, pn] : occ) {
      long long cost = (long long)pn.first * pn.second;
      if (best == -1 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }

    std::vector<LinForm> pos, neg, rest;
    for (LinForm& f : rows) {
      auto it = f.coef.find(best);
      if (it == f.coef.end()) rest.push_back(std::move(f));
      else if (it->second > 0) pos.push_back(std::move(f));
      else neg.push_back(std::move(f));
    }
    for (const LinForm& p : pos) {
      for (const LinForm& n : neg) {
        LinForm r;
        if (!combine(p, p.coef.at(best), n, n.coef.at(best), r)) return false;
        tighten(r);
        if (r.coef.empty()) {
          if (r.c > 0) return true;
          continue;
        }
        rest.push_back(std::move(r));
        if (rest.size() > row_cap) return false;
      }
    }
    rows = std::move(rest);
  }
}

// ---------------------------------------------------------------------
// Guard facts: atomic structural knowledge implied by the guard prefix,
// in negation normal form.

bool exact_spine(const Term& t);

struct Fact {
  enum class Kind {
    Elem, NotElem, InSet, NotInSet, Same, NotSame, IsList, NotIsList, Cmp,
    True, False,
  };
  Kind kind = Kind::True;
  Term a, b;
  std::string set;
  Cond::Op op = Cond::Op::Eq;
  std::vector<LevelExpr> cmp;  // lhs, rhs
  TermVec args;                // atom arguments for Cmp evaluation
};

struct GTree {
  enum class Node { Leaf, And, Or };
  Node node = Node::Leaf;
  Fact leaf;
  std::vector<GTree> kids;

  static GTree of(Fact f) {
    GTree t;
    t.leaf = std::move(f);
    return t;
  }
  static GTree branch(Node n, std::vector<GTree> kids) {
    GTree t;
    t.node = n;
    t.kids = std::move(kids);
    return t;
  }
};

GTree negate_tree(const GTree& t);

GTree negate_leaf(const Fact& f) {
  using K = Fact::Kind;
  Fact g = f;
  switch (f.kind) {
    case K::Elem: g.kind = K::NotElem; break;
    case K::NotElem: g.kind = K::Elem; break;
    case K::InSet: g.kind = K::NotInSet; break;
    case K::NotInSet: g.kind = K::InSet; break;
    case K::Same: g.kind = K::NotSame; break;
    case K::NotSame: g.kind = K::Same; break;
    case K::IsList: g.kind = K::NotIsList; break;
    case K::NotIsList: g.kind = K::IsList; break;
    case K::True: g.kind = K::False; break;
    case K::False: g.kind = K::True; break;
    case K::Cmp:
      switch (f.op) {
        case Cond::Op::Eq: {
          Fact lt = f, gt = f;
          lt.op = Cond::Op::Lt;
          gt.op = Cond::Op::Gt;
          return GTree::branch(GTree::Node::Or,
                               {GTree::of(lt), GTree::of(gt)});
        }
        case Cond::Op::Lt: g.op = Cond::Op::Ge; break;
        case Cond::Op::Le: g.op = Cond::Op::Gt; break;
        case Cond::Op::Gt: g.op = Cond::Op::Le; break;
        case Cond::Op::Ge: g.op = Cond::Op::Lt; break;
      }
      break;
  }
  return GTree::of(g);
}

GTree negate_tree(const GTree& t) {
  if (t.node == GTree::Node::Leaf) return negate_leaf(t.leaf);
  std::vector<GTree> kids;
  kids.reserve(t.kids.size());
  for (const GTree& k : t.kids) kids.push_back(negate_tree(k));
  return GTree::branch(
      t.node == GTree::Node::And ? GTree::Node::Or : GTree::Node::And,
      std::move(kids));
}

const Term& cond_arg(const TermVec& args, std::size_t i) {
  if (i == 0 || i > args.size())
    throw AnnotationError("argument index arg" + std::to_string(i) +
                          " out of range for arity " +
                          std::to_string(args.size()));
  return args[i - 1];
}

GTree cond_tree(const Cond& c, const TermVec& args) {
  using K = Fact::Kind;
  Fact f;
  switch (c.kind) {
    case Cond::Kind::All:
      f.kind = K::True;
      return GTree::of(f);
    case Cond::Kind::None:
      f.kind = K::False;
      return GTree::of(f);
    case Cond::Kind::Elem: {
      Term container = cond_arg(args, c.arg2);
      // A short, fully determined spine makes membership a finite choice;
      // the equality cases let later unification specialize each one.
      if (exact_spine(container)) {
        std::vector<Term> elems = spine_elements(container);
        if (elems.size() <= 16) {
          if (elems.empty()) {
            f.kind = K::False;
            return GTree::of(f);
          }
          std::vector<GTree> kids;
          for (const Term& e : elems) {
            Fact s;
            s.kind = K::Same;
            s.a = cond_arg(args, c.arg);
            s.b = e;
            kids.push_back(GTree::of(s));
          }
          return GTree::branch(GTree::Node::Or, std::move(kids));
        }
      }
      f.kind = K::Elem;
      f.a = cond_arg(args, c.arg);
      f.b = container;
      return GTree::of(f);
    }
    case Cond::Kind::InSet:
      f.kind = K::InSet;
      f.a = cond_arg(args, c.arg);
      f.set = c.set_name;
      return GTree::of(f);
    case Cond::Kind::Same:
      f.kind = K::Same;
      f.a = cond_arg(args, c.arg);
      f.b = cond_arg(args, c.arg2);
      return GTree::of(f);
    case Cond::Kind::IsList:
      f.kind = K::IsList;
      f.a = cond_arg(args, c.arg);
      return GTree::of(f);
    case Cond::Kind::Cmp:
      f.kind = K::Cmp;
      f.op = c.op;
      f.cmp = c.cmp;
      f.args = args;
      return GTree::of(f);
    case Cond::Kind::And:
    case Cond::Kind::Or: {
      std::vector<GTree> kids;
      kids.reserve(c.children.size());
      for (const Cond& ch : c.children) kids.push_back(cond_tree(ch, args));
      return GTree::branch(c.kind == Cond::Kind::And ? GTree::Node::And
                                                     : GTree::Node::Or,
                           std::move(kids));
    }
    case Cond::Kind::Not:
      return negate_tree(cond_tree(c.children[0], args));
  }
  f.kind = K::True;
  return GTree::of(f);
}

// Disjunctive normal form with a case cap; nullopt when the split explodes.
std::optional<std::vector<std::vector<Fact>>> dnf(const GTree& t,
                                                  std::size_t cap) {
  using Cases = std::vector<std::vector<Fact>>;
  if (t.node == GTree::Node::Leaf) {
    if (t.leaf.kind == Fact::Kind::True) return Cases{{}};
    if (t.leaf.kind == Fact::Kind::False) return Cases{};
    return Cases{{t.leaf}};
  }
  if (t.node == GTree::Node::Or) {
    Cases out;
    for (const GTree& k : t.kids) {
      auto sub = dnf(k, cap);
      if (!sub) return std::nullopt;
      for (auto& c : *sub) {
        out.push_back(std::move(c));
        if (out.size() > cap) return std::nullopt;
      }
    }
    return out;
  }
  Cases out{{}};
  for (const GTree& k : t.kids) {
    auto sub = dnf(k, cap);
    if (!sub) return std::nullopt;
    Cases next;
    for (const auto& base : out) {
      for (const auto& add : *sub) {
        std::vector<Fact> merged = base;
        merged.insert(merged.end(), add.begin(), add.end());
        next.push_back(std::move(merged));
        if (next.size() > cap) return std::nullopt;
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------
// Per-case symbolic context: measure variables, structural rows, facts.

struct Ctx {
  const CompareEnv* env;
  Substitution subst;
  std::vector<Fact> facts;  // terms already under subst
  std::vector<std::string> var_names;
  std::map<std::string, int> var_idx;
  std::vector<LinForm> rows;
  std::map<std::string, LinForm> memo;
  std::size_t fresh = 0;

  int var(const std::string& key) {
    auto it = var_idx.find(key);
    if (it != var_idx.end()) return it->second;
    int id = (int)var_names.size();
    var_names.push_back(key);
    var_idx.emplace(key, id);
    return id;
  }
  bool has(const std::string& key) const { return var_idx.count(key) > 0; }
};

bool term_in(const std::vector<Term>& ts, const Term& t) {
  return std::find(ts.begin(), ts.end(), t) != ts.end();
}

// Is `small` the whole of `big` or a suffix of its cons chain?
bool suffix_of(const Term& small, const Term& big) {
  Term cur = big;
  while (true) {
    if (cur == small) return true;
    if (!cur.is_cons()) return false;
    cur = cur.arg(1);
  }
}

bool fact_elem(const Ctx& ctx, const Term& h, const Term& r) {
  for (const Fact& f : ctx.facts)
    if (f.kind == Fact::Kind::Elem && f.a == h && suffix_of(f.b, r))
      return true;
  return false;
}

bool fact_not_elem(const Ctx& ctx, const Term& h, const Term& r) {
  for (const Fact& f : ctx.facts)
    if (f.kind == Fact::Kind::NotElem && f.a == h && suffix_of(r, f.b))
      return true;
  return false;
}

bool fact_in_set(const Ctx& ctx, const Term& h, const std::string& set) {
  for (const Fact& f : ctx.facts)
    if (f.kind == Fact::Kind::InSet && f.a == h && f.set == set) return true;
  return false;
}

bool fact_not_in_set(const Ctx& ctx, const Term& h, const std::string& set) {
  for (const Fact& f : ctx.facts)
    if (f.kind == Fact::Kind::NotInSet && f.a == h && f.set == set)
      return true;
  return false;
}

// All spine elements are known exactly: closed spine, ground elements.
bool exact_spine(const Term& t) {
  auto [items, tail] = t.uncons();
  if (tail.is_variable()) return false;
  for (const Term& e : items)
    if (!e.ground()) return false;
  return true;
}

int len_var(Ctx& ctx, const std::string& var_name) {
  std::string key = "len|" + var_name;
  bool fresh = !ctx.has(key);
  int v = ctx.var(key);
  if (fresh) {
    LinForm nonneg;  // -v <= 0
    nonneg.coef[v] = -1;
    ctx.rows.push_back(nonneg);
  }
  return v;
}

LinForm len_form(Ctx& ctx, const Term& raw) {
  Term t = ctx.subst.apply(raw);
  auto [items, tail] = t.uncons();
  LinForm f = LinForm::constant((long long)items.size());
  if (tail.is_variable()) f += LinForm::variable(len_var(ctx, tail.name()));
  return f;
}

LinForm fresh_delta(Ctx& ctx) {
  int v = ctx.var("delta|" + std::to_string(ctx.fresh++));
  LinForm lo;  // -d <= 0
  lo.coef[v] = -1;
  ctx.rows.push_back(lo);
  LinForm hi = LinForm::variable(v);  // d - 1 <= 0
  hi.c = -1;
  ctx.rows.push_back(hi);
  return LinForm::variable(v);
}

// Bounded variable 0 <= v <= len(tail var), plus extra caps.
LinForm rest_var(Ctx& ctx, const std::string& key, const Term& var_term,
                 const std::vector<LinForm>& caps) {
  bool fresh = !ctx.has(key);
  int v = ctx.var(key);
  if (fresh) {
    LinForm lo;
    lo.coef[v] = -1;
    ctx.rows.push_back(lo);
    LinForm len_cap = LinForm::variable(v);
    len_cap -= LinForm::variable(len_var(ctx, var_term.name()));
    ctx.rows.push_back(len_cap);
    for (const LinForm& cap : caps) {
      LinForm r = LinForm::variable(v);
      r -= cap;
      ctx.rows.push_back(r);
    }
  }
  return LinForm::variable(v);
}

std::string set_key(const std::string& name, const std::vector<Term>& members) {
  return name + "#" + std::to_string(members.size());
}

LinForm delta_set(Ctx& ctx, const Term& rawh, const Term& rawr,
                  const std::string& set_name,
                  const std::vector<Term>& members) {
  Term h = ctx.subst.apply(rawh);
  Term r = ctx.subst.apply(rawr);

  bool h_in_members = h.ground() && term_in(members, h);
  if (h.ground() && !h_in_members) return LinForm::constant(0);
  if (term_in(spine_elements(r), h)) return LinForm::constant(0);
  if (fact_elem(ctx, h, r)) return LinForm::constant(0);
  if (fact_not_in_set(ctx, h, set_name)) return LinForm::constant(0);

  bool in_set = h_in_members || fact_in_set(ctx, h, set_name);
  bool rest_empty = exact_spine(r) && spine_elements(r).empty();
  bool not_in_rest =
      rest_empty ||
      (h.ground() && exact_spine(r) && !term_in(spine_elements(r), h)) ||
      fact_not_elem(ctx, h, r);
  if (in_set && not_in_rest) return LinForm::constant(1);
  return fresh_delta(ctx);
}

LinForm sc_form(Ctx& ctx, const Term& raw, const std::string& set_name,
                const std::vector<Term>& members) {
  Term t = ctx.subst.apply(raw);
  std::string skey = set_key(set_name, members);
  std::string key = "sc|" + skey + "|" + t.str();
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;

  LinForm f;
  if (t.is_cons()) {
    f = sc_form(ctx, t.arg(1), set_name, members);
    f += delta_set(ctx, t.arg(0), t.arg(1), set_name, members);
  } else if (t.is_variable()) {
    f = rest_var(ctx, "scr|" + skey + "|" + t.name(), t,
                 {LinForm::constant((long long)members.size())});
  }
  ctx.memo.emplace(key, f);
  return f;
}

// First components of the edges certainly in g: ground two-element list
// elements of g's spine, plus guard-known elements of g that look like
// edges (their first component may contain variables).
std::vector<Term> known_firsts(const Ctx& ctx, const Term& g) {
  std::vector<Term> out;
  auto edge_first = [&](const Term& e) {
    if (e.is_cons() && e.arg(1).is_cons() && e.arg(1).arg(1).is_nil())
      out.push_back(e.arg(0));
  };
  for (const Term& e : spine_elements(g)) edge_first(e);
  for (const Fact& f : ctx.facts)
    if (f.kind == Fact::Kind::Elem && suffix_of(f.b, g)) edge_first(f.a);
  return out;
}

LinForm delta_pair(Ctx& ctx, const Term& rawh, const Term& rawr,
                   const Term& g) {
  Term h = ctx.subst.apply(rawh);
  Term r = ctx.subst.apply(rawr);

  if (term_in(spine_elements(r), h)) return LinForm::constant(0);
  if (fact_elem(ctx, h, r)) return LinForm::constant(0);

  std::vector<Term> firsts = known_firsts(ctx, g);
  if (g.ground() && h.ground() && !term_in(firsts, h))
    return LinForm::constant(0);

  bool is_first = term_in(firsts, h);
  bool rest_empty = exact_spine(r) && spine_elements(r).empty();
  bool not_in_rest =
      rest_empty ||
      (h.ground() && exact_spine(r) && !term_in(spine_elements(r), h)) ||
      fact_not_elem(ctx, h, r);
  if (is_first && not_in_rest) return LinForm::constant(1);
  return fresh_delta(ctx);
}

LinForm pc_form(Ctx& ctx, const Term& raw, const Term& rawg) {
  Term t = ctx.subst.apply(raw);
  Term g = ctx.subst.apply(rawg);
  std::string key = "pc|" + g.str() + "|" + t.str();
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;

  LinForm f;
  if (t.is_cons()) {
    f = pc_form(ctx, t.arg(1), rawg);
    f += delta_pair(ctx, t.arg(0), t.arg(1), g);
  } else if (t.is_variable()) {
    f = rest_var(ctx, "pcr|" + g.str() + "|" + t.name(), t,
                 {len_form(ctx, g)});
  }
  ctx.memo.emplace(key, f);
  return f;
}

// f >= 0 everywhere iff the rows plus the counter-assumption f <= -1
// (f + 1 <= 0 over integers) are infeasible.
bool prove_nonneg(Ctx& ctx, const LinForm& f) {
  std::vector<LinForm> rows = ctx.rows;
  LinForm counter = f;
  counter.c += 1;
  rows.push_back(std::move(counter));
  return fm_infeasible(std::move(rows), ctx.env->row_cap);
}

const LevelExpr* select_case(const LevelExpr& e, const Term& t) {
  if (t.is_variable()) return nullptr;
  for (std::size_t i = 0; i < e.case_functors.size(); ++i)
    if (e.case_functors[i].name == t.name() &&
        e.case_functors[i].arity == t.arity())
      return &e.children[i];
  return &e.children.back();
}

std::optional<LinForm> linize(Ctx& ctx, const LevelExpr& e,
                              const TermVec& args,
                              const std::map<std::string, std::vector<Term>>&
                                  sets,
                              bool truncate) {
  switch (e.kind) {
    case LevelExpr::Kind::Nat:
      return LinForm::constant(e.value);
    case LevelExpr::Kind::Len:
      return len_form(ctx, cond_arg(args, e.arg));
    case LevelExpr::Kind::SetCount: {
      auto it = sets.find(e.set_name);
      if (it == sets.end())
        throw AnnotationError("unknown set @" + e.set_name);
      const Term& t = cond_arg(args, e.arg);
      LinForm f = sc_form(ctx, t, e.set_name, it->second);
      LinForm cap1 = f - len_form(ctx, t);  // sc <= len
      ctx.rows.push_back(cap1);
      LinForm cap2 = f;  // sc <= |S|
      cap2.c -= (long long)it->second.size();
      ctx.rows.push_back(cap2);
      return f;
    }
    case LevelExpr::Kind::PairCount: {
      const Term& p = cond_arg(args, e.arg);
      const Term& g = cond_arg(args, e.arg2);
      LinForm f = pc_form(ctx, p, g);
      ctx.rows.push_back(f - len_form(ctx, p));
      ctx.rows.push_back(f - len_form(ctx, g));
      return f;
    }
    case LevelExpr::Kind::Add: {
      auto a = linize(ctx, e.children[0], args, sets, truncate);
      auto b = linize(ctx, e.children[1], args, sets, truncate);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case LevelExpr::Kind::Sub: {
      auto a = linize(ctx, e.children[0], args, sets, truncate);
      auto b = linize(ctx, e.children[1], args, sets, truncate);
      if (!a || !b) return std::nullopt;
      if (!truncate) return *a - *b;
      if (prove_nonneg(ctx, *a - *b)) return *a - *b;
      if (prove_nonneg(ctx, *b - *a)) return LinForm::constant(0);
      // max(a-b, 0): bounded below by a-b and 0, above by a (b is natural).
      LinForm m = LinForm::variable(ctx.var("max|" + std::to_string(ctx.fresh++)));
      LinForm lo1 = (*a - *b) - m;
      ctx.rows.push_back(lo1);
      LinForm lo2 = m;
      lo2.scale(-1);
      ctx.rows.push_back(lo2);
      LinForm hi = m - *a;
      ctx.rows.push_back(hi);
      return m;
    }
    case LevelExpr::Kind::Mul: {
      auto a = linize(ctx, e.children[0], args, sets, truncate);
      if (!a) return std::nullopt;
      a->scale(e.value);
      return *a;
    }
    case LevelExpr::Kind::Cases: {
      Term t = ctx.subst.apply(cond_arg(args, e.arg));
      const LevelExpr* branch = select_case(e, t);
      if (!branch) return std::nullopt;  // open functor: no symbolic story
      return linize(ctx, *branch, args, sets, truncate);
    }
  }
  return std::nullopt;
}

void add_cmp_rows(Ctx& ctx, const Fact& f,
                  const std::map<std::string, std::vector<Term>>& sets) {
  TermVec args;
  args.reserve(f.args.size());
  for (const Term& t : f.args) args.push_back(ctx.subst.apply(t));
  std::optional<LinForm> lhs, rhs;
  try {
    lhs = linize(ctx, f.cmp[0], args, sets, false);
    rhs = linize(ctx, f.cmp[1], args, sets, false);
  } catch (const AnnotationError&) {
    throw;  // annotation gaps surface as Invalid either way
  }
  if (!lhs || !rhs) return;  // dropping a hypothesis only weakens the proof
  LinForm d = *lhs - *rhs;
  switch (f.op) {
    case Cond::Op::Eq: {
      ctx.rows.push_back(d);
      LinForm r = d;
      r.scale(-1);
      ctx.rows.push_back(r);
      break;
    }
    case Cond::Op::Le:
      ctx.rows.push_back(d);
      break;
    case Cond::Op::Lt:
      d.c += 1;
      ctx.rows.push_back(d);
      break;
    case Cond::Op::Ge:
      d.scale(-1);
      ctx.rows.push_back(d);
      break;
    case Cond::Op::Gt:
      d.scale(-1);
      d.c += 1;
      ctx.rows.push_back(d);
      break;
  }
}

// ---------------------------------------------------------------------

struct ProblemSpec {
  const LevelMapSpec* head_spec;
  const LevelMapSpec* body_spec;
  const Clause* clause;
  std::size_t i;
  bool strict;
  const InterpretationSpec* guard;
  std::vector<std::size_t> prefix;
  const CompareEnv* env;
};

// true: proved for all cases.  false: some case resists the linear proof.
GTree literal_tree(const Literal& l, const InterpretationSpec* I) {
  switch (l.kind) {
    case Literal::Kind::Eq: {
      Fact f;
      f.kind = Fact::Kind::Same;
      f.a = l.lhs;
      f.b = l.rhs;
      return GTree::of(f);
    }
    case Literal::Kind::Ineq: {
      Fact f;
      switch (classify_ineq(Ineq::from_literal(l))) {
        case IneqClass::Valid: f.kind = Fact::Kind::True; break;
        case IneqClass::Unsatisfiable: f.kind = Fact::Kind::False; break;
        case IneqClass::Primitive: f.kind = Fact::Kind::True; break;
      }
      return GTree::of(f);
    }
    case Literal::Kind::Pos:
      return cond_tree(I->cond_for(l.atom.rel_id()), l.atom.args);
    case Literal::Kind::Neg:
      return negate_tree(cond_tree(I->cond_for(l.atom.rel_id()),
                                   l.atom.args));
  }
  Fact f;
  f.kind = Fact::Kind::True;
  return GTree::of(f);
}

// Unifies the case's equalities and loads the rest as facts and rows.
// nullopt: the case has no ground instances.
std::optional<Ctx> case_context(const std::vector<Fact>& facts,
                                const CompareEnv& env,
                                const std::map<std::string,
                                               std::vector<Term>>& sets) {
  Substitution cs;
  for (const Fact& f : facts) {
    if (f.kind != Fact::Kind::Same) continue;
    auto mgu = unify(cs.apply(f.a), cs.apply(f.b));
    if (!mgu) return std::nullopt;
    cs = cs.compose(*mgu);
  }

  Ctx ctx;
  ctx.env = &env;
  ctx.subst = cs;
  for (const Fact& f : facts) {
    if (f.kind == Fact::Kind::Same || f.kind == Fact::Kind::Cmp) continue;
    Fact g = f;
    g.a = cs.apply(f.a);
    g.b = cs.apply(f.b);
    ctx.facts.push_back(std::move(g));
  }
  for (const Fact& f : facts)
    if (f.kind == Fact::Kind::Cmp) add_cmp_rows(ctx, f, sets);
  return ctx;
}

bool symbolic_proved(const ProblemSpec& ps) {
  std::vector<GTree> lits;
  for (std::size_t j : ps.prefix)
    lits.push_back(literal_tree(ps.clause->body[j], ps.guard));
  auto cases = dnf(GTree::branch(GTree::Node::And, std::move(lits)),
                   ps.env->case_cap);
  if (!cases) return false;

  const Atom& head = ps.clause->head;
  const Atom& batom = ps.clause->body[ps.i].atom;
  const LevelExpr& hexpr = ps.head_spec->expr_for(head.rel_id());
  const LevelExpr& bexpr = ps.body_spec->expr_for(batom.rel_id());
  const auto& sets = ps.guard ? ps.guard->sets : ps.head_spec->sets;

  for (const std::vector<Fact>& facts : *cases) {
    auto ctx = case_context(facts, *ps.env, sets);
    if (!ctx) continue;  // no ground instance satisfies this case

    auto hf = linize(*ctx, hexpr, head.args, ps.head_spec->sets, true);
    if (!hf) return false;
    auto bf = linize(*ctx, bexpr, batom.args, ps.body_spec->sets, true);
    if (!bf) return false;

    // Counter-assumption: head - body <= delta - 1.
    LinForm counter = *hf - *bf;
    counter.c += ps.strict ? 0 : 1;
    std::vector<LinForm> rows = ctx->rows;
    rows.push_back(std::move(counter));
    if (!fm_infeasible(std::move(rows), ps.env->row_cap)) return false;
  }
  return true;
}

// Proves a single comparison goal from the case rows.
bool prove_cmp(Ctx& ctx, const Fact& f,
               const std::map<std::string, std::vector<Term>>& sets) {
  auto lhs = linize(ctx, f.cmp[0], f.args, sets, false);
  auto rhs = linize(ctx, f.cmp[1], f.args, sets, false);
  if (!lhs || !rhs) return false;
  auto refutes = [&](LinForm counter) {
    std::vector<LinForm> rows = ctx.rows;
    rows.push_back(std::move(counter));
    return fm_infeasible(std::move(rows), ctx.env->row_cap);
  };
  LinForm d = *lhs - *rhs;  // prove d op 0 by refuting its negation
  LinForm nd = LinForm::constant(0) - d;
  switch (f.op) {
    case Cond::Op::Ge: d.c += 1; return refutes(d);          // d <= -1
    case Cond::Op::Gt: return refutes(d);                    // d <= 0
    case Cond::Op::Le: nd.c += 1; return refutes(nd);        // -d <= -1
    case Cond::Op::Lt: return refutes(nd);                   // -d <= 0
    case Cond::Op::Eq: {
      LinForm a = d, b = nd;
      a.c += 1;
      b.c += 1;
      return refutes(a) && refutes(b);
    }
  }
  return false;
}

// Derives a goal condition tree from the case's facts, structure and rows.
// Sound, incomplete; the tree is in negation normal form.
bool prove_goal(Ctx& ctx, const GTree& t,
                const std::map<std::string, std::vector<Term>>& sets) {
  if (t.node == GTree::Node::And) {
    for (const GTree& k : t.kids)
      if (!prove_goal(ctx, k, sets)) return false;
    return true;
  }
  if (t.node == GTree::Node::Or) {
    for (const GTree& k : t.kids)
      if (prove_goal(ctx, k, sets)) return true;
    return false;
  }

  const Fact& f = t.leaf;
  Term a = ctx.subst.apply(f.a);
  Term b = ctx.subst.apply(f.b);
  auto members = [&](const std::string& name) -> const std::vector<Term>* {
    auto it = sets.find(name);
    return it == sets.end() ? nullptr : &it->second;
  };
  switch (f.kind) {
    case Fact::Kind::True:
      return true;
    case Fact::Kind::False:
      // Only provable when the case itself cannot happen.
      return fm_infeasible(ctx.rows, ctx.env->row_cap);
    case Fact::Kind::Same:
      return a == b;
    case Fact::Kind::NotSame:
      return !unify(a, b).has_value();
    case Fact::Kind::Elem:
      return term_in(spine_elements(b), a) || fact_elem(ctx, a, b);
    case Fact::Kind::NotElem: {
      if (fact_not_elem(ctx, a, b)) return true;
      if (!exact_spine(b)) return false;
      std::vector<Term> elems = spine_elements(b);
      return elems.empty() || (a.ground() && !term_in(elems, a));
    }
    case Fact::Kind::InSet: {
      const std::vector<Term>* m = members(f.set);
      return (m && a.ground() && term_in(*m, a)) ||
             fact_in_set(ctx, a, f.set);
    }
    case Fact::Kind::NotInSet: {
      const std::vector<Term>* m = members(f.set);
      return (m && a.ground() && !term_in(*m, a)) ||
             fact_not_in_set(ctx, a, f.set);
    }
    case Fact::Kind::IsList: {
      if (a.uncons().second.is_nil()) return true;
      for (const Fact& g : ctx.facts)
        if (g.kind == Fact::Kind::IsList && suffix_of(a, g.a)) return true;
      return false;
    }
    case Fact::Kind::NotIsList: {
      const Term tail = a.uncons().second;
      if (!tail.is_nil() && !tail.is_variable()) return true;
      for (const Fact& g : ctx.facts)
        if (g.kind == Fact::Kind::NotIsList && suffix_of(g.a, a)) return true;
      return false;
    }
    case Fact::Kind::Cmp:
      return prove_cmp(ctx, f, sets);
  }
  return false;
}

CheckReport enumerate(const ProblemSpec& ps) {
  const Clause& clause = *ps.clause;
  std::vector<Literal> lits;
  for (std::size_t j : ps.prefix) lits.push_back(clause.body[j]);
  std::size_t guard_count = lits.size();
  lits.push_back(clause.body[ps.i]);
  Clause pseudo{0, clause.head, lits};
  std::vector<std::string> vars = pseudo.variables();

  int verified = 0;
  for (int d = 1; d <= ps.env->depth; ++d) {
    HerbrandSlice slice;
    try {
      slice = build_slice(ps.env->sig, d, ps.env->instance_cap);
      ground_instance_count(pseudo, slice, ps.env->instance_cap);
    } catch (const ResourceError&) {
      if (verified == 0) throw;
      break;
    }

    std::vector<std::size_t> idx(vars.size(), 0);
    bool more = true;
    while (more) {
      Substitution sigma;
      for (std::size_t k = 0; k < vars.size(); ++k)
        sigma.bind(vars[k], slice.terms[idx[k]]);

      bool guard_ok = true;
      for (std::size_t j = 0; j < guard_count; ++j) {
        const Literal inst = pseudo.body[j].apply(sigma);
        bool truth = inst.is_constraint()
                         ? InterpretationSpec{}.holds(inst)
                         : ps.guard->holds(inst);
        if (!truth) {
          guard_ok = false;
          break;
        }
      }
      if (guard_ok) {
        long lh = eval_level(*ps.head_spec, clause.head.apply(sigma));
        long lb = eval_level(*ps.body_spec, pseudo.body.back().apply(sigma));
        bool ok = ps.strict ? lh > lb : lh >= lb;
        if (!ok) {
          Substitution full = sigma;
          for (const std::string& v : clause.variables())
            if (!full.contains(v)) full.bind(v, slice.terms.front());
          Witness w;
          w.instance = clause.apply(full);
          w.obligation = "decrease";
          w.detail = "head level " + std::to_string(lh) +
                     (ps.strict ? " not > " : " not >= ") +
                     std::to_string(lb) + " at body literal " +
                     std::to_string(ps.i + 1);
          return CheckReport::refuted(std::move(w));
        }
      }

      std::size_t k = vars.size();
      while (k > 0) {
        if (++idx[k - 1] < slice.size()) break;
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) more = false;
    }
    verified = d;
  }
  return CheckReport::bounded(verified);
}

}  // namespace

CheckReport compare_levels(const LevelMapSpec& head_spec,
                           const LevelMapSpec& body_spec,
                           const Clause& clause, std::size_t i, bool strict,
                           const InterpretationSpec* guard,
                           const CompareEnv& env,
                           const std::vector<std::size_t>* guard_prefix) {
  if (i >= clause.body.size())
    return CheckReport::invalid("body literal index out of range");
  if (!clause.body[i].is_atomlit())
    return CheckReport::invalid("compared body literal must be an atom");

  ProblemSpec ps;
  ps.head_spec = &head_spec;
  ps.body_spec = &body_spec;
  ps.clause = &clause;
  ps.i = i;
  ps.strict = strict;
  ps.guard = guard;
  ps.env = &env;
  if (guard) {
    if (guard_prefix) {
      ps.prefix = *guard_prefix;
      for (std::size_t j : ps.prefix)
        if (j >= clause.body.size())
          return CheckReport::invalid("guard literal index out of range");
    } else {
      for (std::size_t j = 0; j < i; ++j) ps.prefix.push_back(j);
    }
  }

  try {
    if (env.symbolic && symbolic_proved(ps)) {
      if (env.crosscheck) {
        CheckReport ground = enumerate(ps);
        if (ground.status == CheckStatus::Refuted)
          throw std::logic_error(
              "internal inconsistency: symbolic proof contradicted by "
              "ground instance " + ground.witness->instance.str());
      }
      return CheckReport::proved();
    }
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
  try {
    return enumerate(ps);
  } catch (const AnnotationError& e) {
    return CheckReport::invalid(e.what());
  }
}

bool models_clause_symbolic(const InterpretationSpec& I, const Clause& c,
                            const CompareEnv& env) {
  std::vector<GTree> lits;
  for (const Literal& l : c.body) lits.push_back(literal_tree(l, &I));
  auto cases = dnf(GTree::branch(GTree::Node::And, std::move(lits)),
                   env.case_cap);
  if (!cases) return false;

  GTree goal = cond_tree(I.cond_for(c.head.rel_id()), c.head.args);
  for (const std::vector<Fact>& facts : *cases) {
    auto ctx = case_context(facts, env, I.sets);
    if (!ctx) continue;
    if (!prove_goal(*ctx, goal, I.sets)) return false;
  }
  return true;
}

CheckReport compare_levels(const LevelMapSpec& spec, const Clause& clause,
                           std::size_t i, bool strict,
                           const InterpretationSpec* guard,
                           const CompareEnv& env) {
  return compare_levels(spec, spec, clause, i, strict, guard, env, nullptr);
}

}  // namespace glp
