#include "qtfock/nekrasov.hpp"

#include <map>
#include <mutex>
#include <string>

#include "qtfock/errors.hpp"
#include "qtfock/symfunc.hpp"

namespace qtfock {

namespace {

RatFunc nekrasov_compute(const Ctx& ctx, const Partition& la,
                         const Partition& mu, const RatFunc& u) {
  RatFunc out(1);
  for (int i = 1; i <= la.length(); ++i) {
    for (int j = 1; j <= la.row(i); ++j) {
      out *= RatFunc(1) -
             u * ctx.qpow(-mu.row(i) + j - 1) * ctx.tpow(-la.col(j) + i);
    }
  }
  for (int k = 1; k <= mu.length(); ++k) {
    for (int l = 1; l <= mu.row(k); ++l) {
      out *= RatFunc(1) -
             u * ctx.qpow(la.row(k) - l) * ctx.tpow(mu.col(l) - k + 1);
    }
  }
  return out;
}

std::mutex cache_mutex;
std::map<std::string, RatFunc> cache;

}  // namespace

RatFunc nekrasov_factor(const Ctx& ctx, const Partition& la,
                        const Partition& mu, const RatFunc& u) {
  std::string key = ctx.q4().to_string() + "|" + ctx.t4().to_string() + "|" +
                    la.to_string() + "|" + mu.to_string() + "|" +
                    u.to_string();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  RatFunc val = nekrasov_compute(ctx, la, mu, u);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(val)).first->second;
}

RatFunc nekrasov_factor_armleg(const Ctx& ctx, const Partition& la,
                               const Partition& mu, const RatFunc& u) {
  RatFunc out(1);
  for (int i = 1; i <= la.length(); ++i) {
    for (int j = 1; j <= la.row(i); ++j) {
      out *= RatFunc(1) -
             u * ctx.qpow(-mu.arm(i, j) - 1) * ctx.tpow(-la.leg(i, j));
    }
  }
  for (int k = 1; k <= mu.length(); ++k) {
    for (int l = 1; l <= mu.row(k); ++l) {
      out *= RatFunc(1) -
             u * ctx.qpow(la.arm(k, l)) * ctx.tpow(mu.leg(k, l) + 1);
    }
  }
  return out;
}

std::vector<RatFunc> z_su2_series(const Ctx& ctx, int order,
                                  const RatFunc& Q) {
  RatFunc one(1);
  RatFunc Qinv = Q.inverse();
  std::vector<RatFunc> out(static_cast<size_t>(order) + 1, RatFunc(0));
  for (int k = 0; k <= order; ++k) {
    RatFunc acc(0);
    for (int a = 0; a <= k; ++a) {
      for (const Partition& la : partitions_of(a)) {
        for (const Partition& mu : partitions_of(k - a)) {
          RatFunc den = nekrasov_factor(ctx, la, la, one) *
                        nekrasov_factor(ctx, mu, mu, one) *
                        nekrasov_factor(ctx, la, mu, Q) *
                        nekrasov_factor(ctx, mu, la, Qinv);
          acc += den.inverse();
        }
      }
    }
    out[static_cast<size_t>(k)] = acc;
  }
  return out;
}

U5dSeries z_5d_um(const Ctx& ctx, int m, int order,
                  const std::vector<RatFunc>& u, const std::vector<RatFunc>& v,
                  const std::vector<RatFunc>& w) {
  U5dSeries out;
  out.primary.assign(static_cast<size_t>(order) + 1, RatFunc(0));
  out.middle.assign(static_cast<size_t>(order) + 1, RatFunc(0));

  RatFunc em_u = elementary_sym(u, m);
  RatFunc em_w = elementary_sym(w, m);
  RatFunc ratio = em_u / em_w;
  RatFunc tq_m = (ctx.t() / ctx.q()).pow(m);
  RatFunc q_over_t = ctx.q() / ctx.t();

  Partition empty;
  for (int k = 0; k <= order; ++k) {
    RatFunc acc_primary(0), acc_middle(0);
    for (const PartitionTuple& tup : tuples_of(m, k)) {
      RatFunc numer(1);
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
          numer *= nekrasov_factor(
              ctx, empty, tup.slot(j),
              q_over_t * w[static_cast<size_t>(i - 1)] /
                  v[static_cast<size_t>(j - 1)]);
          numer *= nekrasov_factor(
              ctx, tup.slot(i), empty,
              q_over_t * v[static_cast<size_t>(i - 1)] /
                  u[static_cast<size_t>(j - 1)]);
        }
      }
      RatFunc den_primary(1), den_middle(1);
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
          RatFunc vr = v[static_cast<size_t>(i - 1)] /
                       v[static_cast<size_t>(j - 1)];
          den_primary *= nekrasov_factor(ctx, tup.slot(i), tup.slot(j), vr);
          den_middle *=
              nekrasov_factor(ctx, tup.slot(i), tup.slot(j), q_over_t * vr);
        }
      }
      acc_primary += numer / den_primary;
      acc_middle += numer / den_middle;
    }
    out.primary[static_cast<size_t>(k)] =
        tq_m.pow(k) * ratio.pow(k) * acc_primary;
    out.middle[static_cast<size_t>(k)] = ratio.pow(k) * acc_middle;
    if (out.primary[static_cast<size_t>(k)] !=
        out.middle[static_cast<size_t>(k)]) {
      throw InconsistentSystem(
          "5D series conventions disagree at order " + std::to_string(k));
    }
  }
  return out;
}

}  // namespace qtfock
