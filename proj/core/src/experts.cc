// Copyright 2026 The dpol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpol/experts.h"

#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpol/status_macros.h"

namespace dpol {

std::string ExpertId::ToString() const {
  return absl::StrCat("i=(", absl::StrJoin(switches, ","), ") j=(",
                      absl::StrJoin(feeds, ","), ")");
}

absl::Status ValidateExpertId(const ExpertId& id, int64_t T) {
  if (id.switches.size() != id.feeds.size()) {
    return absl::InvalidArgumentError("switch and feed counts differ");
  }
  int64_t prev = 0;
  for (int k = 0; k < id.M(); ++k) {
    if (id.feeds[k] <= prev || id.feeds[k] > id.switches[k] ||
        id.switches[k] > T) {
      return absl::InvalidArgumentError(
          absl::StrCat("expert ", id.ToString(), " is not in J for T = ", T));
    }
    prev = id.switches[k];
  }
  return absl::OkStatus();
}

uint64_t CountExperts(int64_t T, int M) {
  if (T < 0 || M < 0) return 0;
  const int64_t n = T + M;
  const int64_t k = 2 * static_cast<int64_t>(M);
  if (k > n) return 0;
  unsigned __int128 c = 1;
  constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
  for (int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned __int128>(n - k + i) / i;
    if (c > kMax) return kMax;
  }
  return static_cast<uint64_t>(c);
}

namespace {

void Enumerate(int64_t T, int M, int64_t prev, ExpertId& cur,
               std::vector<ExpertId>& out) {
  if (cur.M() == M) {
    out.push_back(cur);
    return;
  }
  for (int64_t i = prev + 1; i <= T; ++i) {
    for (int64_t j = prev + 1; j <= i; ++j) {
      cur.switches.push_back(i);
      cur.feeds.push_back(j);
      Enumerate(T, M, i, cur, out);
      cur.switches.pop_back();
      cur.feeds.pop_back();
    }
  }
}

absl::Status CheckCaps(int64_t T, int M, const ExpertCaps& caps) {
  if (T < 0 || M < 0) {
    return absl::InvalidArgumentError("negative horizon or switch count");
  }
  if (M > caps.max_M || T > caps.max_T) {
    return absl::ResourceExhaustedError(
        absl::StrCat("expert caps exceeded: M = ", M, " (max ", caps.max_M,
                     "), T = ", T, " (max ", caps.max_T, ")"));
  }
  const uint64_t n = CountExperts(T, M);
  if (n > caps.max_experts ||
      (T > 0 && n > caps.max_work / static_cast<uint64_t>(T))) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "expert caps exceeded: ", n, " experts over ", T, " rounds"));
  }
  return absl::OkStatus();
}

std::optional<int> PointAt(const SyntheticSequence& seq, int64_t idx) {
  if (idx < 0 || idx >= static_cast<int64_t>(seq.size())) return std::nullopt;
  return seq[idx];
}

}  // namespace

absl::StatusOr<std::vector<ExpertId>> EnumerateExperts(int64_t T, int M,
                                                       const ExpertCaps& caps) {
  RETURN_IF_ERROR(CheckCaps(T, M, caps));
  std::vector<ExpertId> out;
  out.reserve(CountExperts(T, M));
  ExpertId cur;
  Enumerate(T, M, 0, cur, out);
  return out;
}

Expert::Expert(const Soa* soa, ExpertId id) : soa_(soa), id_(std::move(id)) {}

absl::StatusOr<Hypothesis> Expert::Step(
    int64_t t, const std::optional<SyntheticSequence>& feed) {
  if (t != round_ + 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected round ", round_ + 1, ", got ", t));
  }
  if (round_ == 0) {
    state_ = soa_->Initial();
    ASSIGN_OR_RETURN(current_, soa_->Predict(state_));
  }
  const bool is_switch = next_ < id_.M() && id_.switches[next_] == t;
  if (feed.has_value() != is_switch) {
    return absl::InvalidArgumentError(
        absl::StrCat("expert ", id_.ToString(), is_switch ? " expects" : " got",
                     " a feed at round ", t));
  }
  round_ = t;
  Hypothesis out = current_;
  if (!is_switch) return out;

  const int64_t start = next_ == 0 ? 1 : id_.switches[next_ - 1] + 1;
  ++next_;
  std::optional<int> x = PointAt(*feed, id_.feeds[next_ - 1] - start);
  if (!x) return out;
  SoaState next = soa_->Step(state_, {*x, 1 - current_(*x)});
  if (next.failed) return out;
  state_ = std::move(next);
  ASSIGN_OR_RETURN(current_, soa_->Predict(state_));
  return out;
}

absl::StatusOr<ExpertPool> ExpertPool::Create(const Soa* soa, int64_t T, int M,
                                              const ExpertCaps& caps) {
  ASSIGN_OR_RETURN(std::vector<ExpertId> ids, EnumerateExperts(T, M, caps));
  ExpertPool pool(soa, T, std::move(ids));
  Node root;
  root.state = soa->Initial();
  ASSIGN_OR_RETURN(Hypothesis h, soa->Predict(root.state));
  root.hypothesis = pool.Intern(h);
  pool.nodes_.push_back(std::move(root));
  return pool;
}

ExpertPool::ExpertPool(const Soa* soa, int64_t T, std::vector<ExpertId> ids)
    : soa_(soa),
      T_(T),
      ids_(std::move(ids)),
      schedule_(T + 1),
      node_of_(ids_.size(), 0) {
  for (size_t e = 0; e < ids_.size(); ++e) {
    for (int k = 0; k < ids_[e].M(); ++k) {
      schedule_[ids_[e].switches[k]].emplace_back(static_cast<uint32_t>(e), k);
    }
  }
}

int ExpertPool::Intern(const Hypothesis& h) {
  auto [it, inserted] =
      pool_index_.try_emplace(h, static_cast<int>(pool_.size()));
  if (inserted) pool_.push_back(h);
  return it->second;
}

absl::StatusOr<int> ExpertPool::Child(int parent, int64_t l, int64_t i,
                                      int64_t j, const ReleaseQuery& query) {
  const auto key = std::make_tuple(parent, i, j);
  if (auto it = children_.find(key); it != children_.end()) return it->second;
  Node child = nodes_[parent];
  ASSIGN_OR_RETURN(SyntheticSequence release, query(l, i));
  if (std::optional<int> x = PointAt(release, j - l)) {
    const Hypothesis& h = pool_[child.hypothesis];
    SoaState next = soa_->Step(child.state, {*x, 1 - h(*x)});
    if (!next.failed) {
      ASSIGN_OR_RETURN(Hypothesis g, soa_->Predict(next));
      child.state = std::move(next);
      child.hypothesis = Intern(g);
    }
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(child));
  children_.emplace(key, id);
  return id;
}

absl::StatusOr<std::vector<int>> ExpertPool::Round(int64_t t,
                                                   const ReleaseQuery& query) {
  if (t != round_ + 1 || t > T_) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected round ", round_ + 1, " of ", T_, ", got ", t));
  }
  if (t >= 2) {
    for (const auto& [e, k] : schedule_[t - 1]) {
      const ExpertId& id = ids_[e];
      const int64_t l = k == 0 ? 1 : id.switches[k - 1] + 1;
      ASSIGN_OR_RETURN(node_of_[e], Child(node_of_[e], l, id.switches[k],
                                          id.feeds[k], query));
    }
  }
  round_ = t;
  std::vector<int> out(ids_.size());
  for (size_t e = 0; e < ids_.size(); ++e) {
    out[e] = nodes_[node_of_[e]].hypothesis;
  }
  return out;
}

absl::StatusOr<ExpertStreams> ConstructExperts(const Soa& soa,
                                               absl::Span<const int> xs, int M,
                                               IntervalSanitizer& sanitizer,
                                               Rng& rng,
                                               const ExpertCaps& caps) {
  const int64_t T = static_cast<int64_t>(xs.size());
  if (sanitizer.t() != 0 || sanitizer.index().T() < T) {
    return absl::FailedPreconditionError(
        "interval sanitizer must be fresh and cover the stream");
  }
  ASSIGN_OR_RETURN(ExpertPool pool, ExpertPool::Create(&soa, T, M, caps));
  ExpertStreams out;
  out.streams.assign(pool.size(), std::vector<int>(T));
  const ReleaseQuery query = [&sanitizer](int64_t l, int64_t r) {
    return sanitizer.Query(l, r);
  };
  for (int64_t t = 1; t <= T; ++t) {
    RETURN_IF_ERROR(sanitizer.Step(xs[t - 1], rng));
    ASSIGN_OR_RETURN(std::vector<int> round, pool.Round(t, query));
    for (size_t e = 0; e < round.size(); ++e) out.streams[e][t - 1] = round[e];
  }
  out.ids = pool.ids();
  out.hypotheses = pool.hypotheses();
  return out;
}

ExpertAudit AuditExperts(const ExpertStreams& streams, const ConceptClass& cls,
                         absl::Span<const int> xs) {
  ExpertAudit audit;
  const size_t n = streams.streams.size();
  audit.disagreements.assign(n, std::vector<int64_t>(cls.size(), 0));
  for (size_t e = 0; e < n; ++e) {
    const std::vector<int>& s = streams.streams[e];
    for (size_t t = 0; t < s.size() && t < xs.size(); ++t) {
      const int y = streams.hypotheses[s[t]](xs[t]);
      for (size_t c = 0; c < cls.size(); ++c) {
        audit.disagreements[e][c] += cls.concept_at(c)(xs[t]) != y;
      }
    }
  }
  audit.best.assign(cls.size(), std::numeric_limits<int64_t>::max());
  audit.best_expert.assign(cls.size(), 0);
  for (size_t c = 0; c < cls.size(); ++c) {
    for (size_t e = 0; e < n; ++e) {
      if (audit.disagreements[e][c] < audit.best[c]) {
        audit.best[c] = audit.disagreements[e][c];
        audit.best_expert[c] = e;
      }
    }
  }
  return audit;
}

std::string ExpertAuditCsv(const ExpertStreams& streams,
                           const ConceptClass& cls, const ExpertAudit& audit) {
  std::string out = "expert,switches,feeds,concept,disagreements\n";
  for (size_t e = 0; e < audit.disagreements.size(); ++e) {
    const ExpertId& id = streams.ids[e];
    const std::string sw = absl::StrJoin(id.switches, ";");
    const std::string fd = absl::StrJoin(id.feeds, ";");
    for (size_t c = 0; c < cls.size(); ++c) {
      absl::StrAppend(&out, e, ",", sw, ",", fd, ",",
                      cls.concept_at(c).ToString(), ",",
                      audit.disagreements[e][c], "\n");
    }
  }
  return out;
}

}  // namespace dpol
