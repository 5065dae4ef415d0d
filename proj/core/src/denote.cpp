#include "lve/denote.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lve/error.hpp"
#include "lve/typecheck.hpp"

namespace lve {

double WeightedRelation::at(const Assignment& a, const WebElement& b) const {
  std::size_t row = 0;
  for (const auto& v : rows) {
    auto it = a.find(v.name);
    if (it == a.end()) fail(ErrorKind::UnknownVariable, "assignment misses " + v.name);
    row = row * v.type.web_size() + web_index(v.type, it->second);
  }
  return at(row, web_index(type, b));
}

double WeightedRelation::total_mass() const {
  double s = 0;
  for (double x : entries) s += x;
  return s;
}

double max_difference(const WeightedRelation& a, const WeightedRelation& b) {
  if (a.rows != b.rows || a.type != b.type || a.entries.size() != b.entries.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double m = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  }
  return m;
}

bool approx_equal(const WeightedRelation& a, const WeightedRelation& b, double tol) {
  return max_difference(a, b) <= tol;
}

void Denoter::check_cap(std::size_t rows, std::size_t cols) const {
  if (rows > web_cap_ || cols > web_cap_ || rows * cols > web_cap_) {
    std::ostringstream os;
    os << "relation of " << rows << "x" << cols << " exceeds the cap of " << web_cap_ << " entries";
    fail(ErrorKind::WebCapExceeded, os.str());
  }
}

std::shared_ptr<const WeightedRelation> Denoter::denote(const Expr& e) {
  auto it = memo_.find(e.id());
  if (it != memo_.end()) return it->second.second;
  auto r = compute(e);
  memo_.emplace(e.id(), std::make_pair(e.handle(), r));
  return r;
}

std::shared_ptr<const WeightedRelation> Denoter::compute(const Expr& e) {
  auto out = std::make_shared<WeightedRelation>();
  out->rows = e.free_vars();
  out->type = type_of(e);
  const std::size_t R = out->row_count();
  const std::size_t C = out->col_count();
  check_cap(R, C);
  out->entries.assign(R * C, 0.0);
  const Layout rows = layout_of(out->rows);

  switch (e.kind()) {
    case Expr::Kind::Var: {
      for (std::size_t i = 0; i < C; ++i) out->entries[i * C + i] = 1.0;
      break;
    }

    case Expr::Kind::MatApp: {
      const auto& m = *e.matrix();
      Layout slots;
      for (const auto& a : e.args()) slots.push(a.name, a.type.web_size());
      slots.finish();
      auto row_of = partial_index(rows, slots);
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) out->entries[r * C + c] = m.at(row_of[r], c);
      }
      break;
    }

    case Expr::Kind::ArrowApp: {
      const Variable& f = e.variable();
      const std::size_t out_size = f.type.right().web_size();
      Layout flay;
      flay.push(f.name, f.type.web_size());
      flay.finish();
      auto f_of = partial_index(rows, flay);
      auto x_of = partial_index(rows, layout_of(e.pattern()));
      for (std::size_t r = 0; r < R; ++r) {
        std::size_t in = f_of[r] / out_size;
        std::size_t res = f_of[r] % out_size;
        if (in == x_of[r]) out->entries[r * C + res] = 1.0;
      }
      break;
    }

    case Expr::Kind::Pair: {
      auto a = denote(e.first());
      auto b = denote(e.second());
      const std::size_t Ca = a->col_count();
      const std::size_t Cb = b->col_count();
      auto ia = partial_index(rows, layout_of(a->rows));
      auto ib = partial_index(rows, layout_of(b->rows));
      for (std::size_t r = 0; r < R; ++r) {
        const double* ra = &a->entries[ia[r] * Ca];
        const double* rb = &b->entries[ib[r] * Cb];
        double* dst = &out->entries[r * C];
        for (std::size_t x = 0; x < Ca; ++x) {
          if (ra[x] == 0.0) continue;
          for (std::size_t y = 0; y < Cb; ++y) dst[x * Cb + y] = ra[x] * rb[y];
          cost_.multiply_adds += Cb;
        }
      }
      break;
    }

    case Expr::Kind::Lam: {
      auto body = denote(e.body());
      const std::size_t Cb = body->col_count();
      const Layout blay = layout_of(body->rows);
      const Layout play = layout_of(e.pattern());
      auto ir = partial_index(rows, blay);
      auto ip = partial_index(play, blay);
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t p = 0; p < play.total; ++p) {
          const double* src = &body->entries[(ir[r] + ip[p]) * Cb];
          double* dst = &out->entries[r * C + p * Cb];
          for (std::size_t y = 0; y < Cb; ++y) dst[y] = src[y];
        }
      }
      break;
    }

    case Expr::Kind::Let: {
      auto bound = denote(e.bound());
      auto body = denote(e.body());
      const std::size_t Cp = bound->col_count();
      const Layout blay = layout_of(body->rows);
      const Layout play = layout_of(e.pattern());
      const VarSet binder = e.pattern().vars();
      auto i1 = partial_index(rows, layout_of(bound->rows));
      auto ia = partial_index(rows, blay, &binder);
      auto ic = partial_index(play, blay);
      for (std::size_t r = 0; r < R; ++r) {
        const double* rb = &bound->entries[i1[r] * Cp];
        double* dst = &out->entries[r * C];
        for (std::size_t c = 0; c < Cp; ++c) {
          const double w = rb[c];
          if (w == 0.0) continue;
          const double* src = &body->entries[(ia[r] + ic[c]) * C];
          for (std::size_t y = 0; y < C; ++y) dst[y] += w * src[y];
          cost_.multiply_adds += C;
        }
      }
      break;
    }
  }
  cost_.table(R * C);
  return out;
}

WeightedRelation denote(const Expr& e, CostCounter* cost, std::size_t web_cap) {
  typecheck(e);
  Denoter d(web_cap);
  auto r = d.denote(e);
  if (cost) {
    cost->multiply_adds += d.cost().multiply_adds;
    cost->table(d.cost().max_table);
  }
  return *r;
}

WeightedRelation denote(const LetTerm& l, CostCounter* cost, std::size_t web_cap) {
  return denote(l.to_expr(), cost, web_cap);
}

MassCheck total_mass_check(const Expr& e, double tol) {
  if (!e.free_vars().empty()) {
    fail(ErrorKind::NotClosed, "term has free variables " + e.free_vars().str());
  }
  Type t = typecheck(e);
  MassCheck m;
  m.mass = denote(e).total_mass();
  m.expected = static_cast<double>(ht(t));
  m.ok = std::abs(m.mass - m.expected) <= tol * std::max(1.0, m.expected);
  return m;
}

}  // namespace lve
