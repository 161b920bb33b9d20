#include "csbm/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csbm/errors.hpp"

namespace csbm {

ZipIndicators ZipIndicators::from_data(const DyadData& data) {
  if (data.kind() != Kind::undirected || data.modality() != Modality::count ||
      data.num_layers() != 1) {
    throw config_error("ZIP requires single-layer undirected count data");
  }
  ZipIndicators zi;
  zi.n = data.n();
  const std::size_t m = static_cast<std::size_t>(zi.n) * (zi.n - 1) / 2;
  zi.active.assign(m, 0);
  zi.y.assign(m, 0.0);
  for (const auto& [k, v] : data.layer(0).values) {
    const int i = static_cast<int>(k >> 32);
    const int j = static_cast<int>(k & 0xffffffffULL);
    const std::size_t s = zi.idx(i, j);
    zi.y[s] = v;
    zi.active[s] = v > 0.0 ? 1 : 0;  // y > 0 forces Z = 1
  }
  return zi;
}

// Per-community accumulator of one node's incident dyads.
// Slot 0: undirected value / directed out-edge (i->j) / dyad4 pair where i is
// the lower node index. Slot 1: directed in-edge / dyad4 pair where i is the
// upper index.
struct BlockLedger::Bucket {
  std::int64_t cat[2][3] = {{0, 0, 0}, {0, 0, 0}};
  double sy[2] = {0, 0};
  double sy2[2] = {0, 0};
  std::int64_t zip_m = 0;
  std::int64_t zip_s = 0;
  bool any = false;
};

BlockLedger::BlockLedger(const DyadData& data, const FamilySpec& spec)
    : data_(&data), spec_(&spec), unordered_(data.unordered_storage()) {
  spec.validate(data.modality(), /*fixed_k=*/true);
  if (spec.uses_zip_indicators() &&
      (data.kind() != Kind::undirected || data.num_layers() != 1)) {
    throw config_error("ZIP family requires single-layer undirected data");
  }
}

void BlockLedger::ensure_capacity(int labels) {
  if (labels <= cap_) return;
  const int new_cap = std::max(labels, std::max(2 * cap_, 4));
  const int layers = data_->num_layers();
  std::vector<BlockStats> stats(static_cast<std::size_t>(layers) * new_cap * new_cap);
  std::vector<double> cache(stats.size(), 0.0);
  for (int l = 0; l < layers; ++l) {
    for (int r = 0; r < cap_; ++r) {
      for (int s = 0; s < cap_; ++s) {
        const std::size_t from = (static_cast<std::size_t>(l) * cap_ + r) * cap_ + s;
        const std::size_t to = (static_cast<std::size_t>(l) * new_cap + r) * new_cap + s;
        stats[to] = stats_[from];
        cache[to] = cache_[from];
      }
    }
  }
  stats_ = std::move(stats);
  cache_ = std::move(cache);
  cap_ = new_cap;
}

void BlockLedger::refresh_block(int r, int s) {
  const Family& fam = spec_->family_for(r == s);
  for (int l = 0; l < data_->num_layers(); ++l) {
    const std::size_t at = slot(l, r, s);
    const double v =
        family_log_marginal(fam, stats_[at], data_->modality(), spec_->drop_constants);
    total_.add(v - cache_[at]);
    cache_[at] = v;
  }
}

void BlockLedger::rename_label(int from, int to, int num_labels) {
  const int layers = data_->num_layers();
  for (int l = 0; l < layers; ++l) {
    for (int c = 0; c < num_labels; ++c) {
      if (c == from) continue;
      const int cc = c == to ? to : c;
      if (unordered_) {
        const std::size_t src = slot(l, from, cc);
        const std::size_t dst = slot(l, to, cc);
        stats_[dst] = stats_[src];
        cache_[dst] = cache_[src];
        stats_[src] = BlockStats{};
        cache_[src] = 0.0;
      } else {
        for (int dir = 0; dir < 2; ++dir) {
          const std::size_t src = dir == 0 ? slot(l, from, cc) : slot(l, cc, from);
          const std::size_t dst = dir == 0 ? slot(l, to, cc) : slot(l, cc, to);
          stats_[dst] = stats_[src];
          cache_[dst] = cache_[src];
          stats_[src] = BlockStats{};
          cache_[src] = 0.0;
        }
      }
    }
    const std::size_t src = slot(l, from, from);
    const std::size_t dst = slot(l, to, to);
    stats_[dst] = stats_[src];
    cache_[dst] = cache_[src];
    stats_[src] = BlockStats{};
    cache_[src] = 0.0;
  }
}

namespace {

// Category index of a dyad4 state within block (min(r,s), max(r,s)).
// `state` is 1..3 in node-index orientation (10 = lower->upper).
// Off-diagonal blocks orient from the smaller community label to the larger;
// diagonal blocks keep the node-index orientation.
int dyad4_category(int state, int lower_comm, int upper_comm) {
  if (state == 3) return 2;
  const bool swap = lower_comm != upper_comm && lower_comm > upper_comm;
  if (state == 1) return swap ? 1 : 0;
  return swap ? 0 : 1;
}

}  // namespace

void BlockLedger::add_node_dyads(const Partition& part, int i, int r, int sign,
                                 const ZipIndicators* zip) {
  const int labels = part.num_labels();
  const int layers = data_->num_layers();
  const Modality modality = data_->modality();
  const bool zip_mode = spec_->uses_zip_indicators();

  // Dyad-count changes: node i gains/loses a dyad with every other node.
  for (int c = 0; c < labels; ++c) {
    const std::int64_t partners = part.size(c) - (c == r ? 1 : 0);
    if (partners == 0) continue;
    for (int l = 0; l < layers; ++l) {
      if (unordered_) {
        stats_[slot(l, r, c)].n += sign * partners;
      } else if (c == r) {
        stats_[slot(l, r, r)].n += sign * 2 * partners;
      } else {
        stats_[slot(l, r, c)].n += sign * partners;
        stats_[slot(l, c, r)].n += sign * partners;
      }
    }
  }

  if (zip_mode) {
    // Every incident dyad matters: active zero dyads carry (m, S) mass.
    const int n = part.n();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!zip->is_active(i, j)) continue;
      const int c = part.label(j);
      BlockStats& st = stats_[slot(0, r, c)];
      st.cat[0] += sign;
      st.cat[1] += sign * static_cast<std::int64_t>(zip->value(i, j));
    }
    return;
  }

  for (int l = 0; l < layers; ++l) {
    for (const Incident& e : data_->layer(l).adjacency[i]) {
      const int c = part.label(e.other);
      switch (modality) {
        case Modality::binary:
          stats_[slot(l, e.forward ? r : c, e.forward ? c : r)].cat[0] += sign;
          break;
        case Modality::count:
          stats_[slot(l, e.forward ? r : c, e.forward ? c : r)].cat[0] +=
              sign * static_cast<std::int64_t>(e.value);
          break;
        case Modality::real: {
          BlockStats& st = stats_[slot(l, e.forward ? r : c, e.forward ? c : r)];
          st.sum_y.add(sign * e.value);
          st.sum_y2.add(sign * e.value * e.value);
          break;
        }
        case Modality::sign:
          stats_[slot(l, r, c)].cat[e.value > 0 ? 0 : 1] += sign;
          break;
        case Modality::dyad4: {
          const int state = static_cast<int>(e.value);
          const int lower_comm = e.forward ? r : c;
          const int upper_comm = e.forward ? c : r;
          stats_[slot(l, r, c)].cat[dyad4_category(state, lower_comm, upper_comm)] +=
              sign;
          break;
        }
      }
    }
  }
}

void BlockLedger::init(const Partition& part, const ZipIndicators* zip) {
  const int labels = part.num_labels();
  const int layers = data_->num_layers();
  if (spec_->uses_zip_indicators() && zip == nullptr) {
    throw std::invalid_argument("ledger: ZIP family requires indicators");
  }
  cap_ = 0;
  stats_.clear();
  cache_.clear();
  total_ = KahanSum{};
  ensure_capacity(labels);

  for (int i = 0; i < part.n(); ++i) {
    if (part.is_detached(i)) throw std::invalid_argument("ledger init: detached node");
  }

  // Dyad counts from sizes alone.
  for (int l = 0; l < layers; ++l) {
    for (int r = 0; r < labels; ++r) {
      const std::int64_t nr = part.size(r);
      stats_[slot(l, r, r)].n = unordered_ ? nr * (nr - 1) / 2 : nr * (nr - 1);
      for (int s = r + 1; s < labels; ++s) {
        const std::int64_t cross = nr * part.size(s);
        if (unordered_) {
          stats_[slot(l, r, s)].n = cross;
        } else {
          stats_[slot(l, r, s)].n = cross;
          stats_[slot(l, s, r)].n = cross;
        }
      }
    }
  }

  const Modality modality = data_->modality();
  if (spec_->uses_zip_indicators()) {
    const int n = part.n();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!zip->is_active(i, j)) continue;
        BlockStats& st = stats_[slot(0, part.label(i), part.label(j))];
        st.cat[0] += 1;
        st.cat[1] += static_cast<std::int64_t>(zip->value(i, j));
      }
    }
  } else {
    for (int l = 0; l < layers; ++l) {
      for (const auto& [key, v] : data_->layer(l).values) {
        const int i = static_cast<int>(key >> 32);
        const int j = static_cast<int>(key & 0xffffffffULL);
        const int r = part.label(i);
        const int s = part.label(j);
        switch (modality) {
          case Modality::binary:
            stats_[slot(l, r, s)].cat[0] += 1;
            break;
          case Modality::count:
            stats_[slot(l, r, s)].cat[0] += static_cast<std::int64_t>(v);
            break;
          case Modality::real: {
            BlockStats& st = stats_[slot(l, r, s)];
            st.sum_y.add(v);
            st.sum_y2.add(v * v);
            break;
          }
          case Modality::sign:
            stats_[slot(l, r, s)].cat[v > 0 ? 0 : 1] += 1;
            break;
          case Modality::dyad4:
            // key is canonical i<j, so i's community is the lower-index side
            stats_[slot(l, r, s)].cat[dyad4_category(static_cast<int>(v), r, s)] += 1;
            break;
        }
      }
    }
  }

  for (int r = 0; r < labels; ++r) {
    for (int s = 0; s < labels; ++s) {
      if (unordered_ && s < r) continue;
      refresh_block(r, s);
    }
  }
}

void BlockLedger::detach(Partition& part, int i, const ZipIndicators* zip) {
  if (part.is_detached(i)) throw std::invalid_argument("detach: node not assigned");
  if (spec_->uses_zip_indicators() && zip == nullptr) {
    throw std::invalid_argument("detach: ZIP family requires indicators");
  }
  const int r = part.label(i);
  add_node_dyads(part, i, r, -1, zip);
  part.detach_node(i);
  const int labels = part.num_labels();
  for (int c = 0; c < labels; ++c) {
    refresh_block(r, c);
    if (!unordered_ && c != r) refresh_block(c, r);
  }
  if (part.mode() == Partition::Mode::open_k && part.size(r) == 0) {
    const int last = labels - 1;
    if (r != last) {
      part.rename_label(last, r);
      rename_label(last, r, labels);
    }
    part.pop_label();
  }
}

void BlockLedger::attach(Partition& part, int i, int k, const ZipIndicators* zip) {
  if (!part.is_detached(i)) throw std::invalid_argument("attach: node already assigned");
  if (spec_->uses_zip_indicators() && zip == nullptr) {
    throw std::invalid_argument("attach: ZIP family requires indicators");
  }
  if (part.mode() == Partition::Mode::open_k && k == part.num_labels()) {
    part.push_label();
    ensure_capacity(part.num_labels());
  } else if (k < 0 || k >= part.num_labels()) {
    throw std::invalid_argument("attach: label out of range");
  }
  part.attach_node(i, k);
  add_node_dyads(part, i, k, +1, zip);
  const int labels = part.num_labels();
  for (int c = 0; c < labels; ++c) {
    refresh_block(k, c);
    if (!unordered_ && c != k) refresh_block(c, k);
  }
}

void BlockLedger::apply_zip_delta(int r, int s, int delta_m, std::int64_t delta_s) {
  BlockStats& st = stats_[slot(0, r, s)];
  st.cat[0] += delta_m;
  st.cat[1] += delta_s;
  refresh_block(r, s);
}

void BlockLedger::bucket_node(const Partition& part, int i, const ZipIndicators* zip,
                              std::vector<Bucket>& buckets) const {
  const int labels = part.num_labels();
  const int layers = data_->num_layers();
  buckets.assign(static_cast<std::size_t>(layers) * labels, Bucket{});
  const Modality modality = data_->modality();

  if (spec_->uses_zip_indicators()) {
    const int n = part.n();
    for (int j = 0; j < n; ++j) {
      if (j == i || !zip->is_active(i, j)) continue;
      Bucket& b = buckets[part.label(j)];
      b.zip_m += 1;
      b.zip_s += static_cast<std::int64_t>(zip->value(i, j));
      b.any = true;
    }
    return;
  }

  for (int l = 0; l < layers; ++l) {
    for (const Incident& e : data_->layer(l).adjacency[i]) {
      Bucket& b = buckets[static_cast<std::size_t>(l) * labels + part.label(e.other)];
      b.any = true;
      // Slot 1 is only meaningful for ordered blocks (in-edges) and dyad4
      // (pairs where i is the canonical upper index).
      const int s =
          (!unordered_ || modality == Modality::dyad4) && !e.forward ? 1 : 0;
      switch (modality) {
        case Modality::binary:
          b.cat[s][0] += 1;
          break;
        case Modality::count:
          b.cat[s][0] += static_cast<std::int64_t>(e.value);
          break;
        case Modality::real:
          b.sy[s] += e.value;
          b.sy2[s] += e.value * e.value;
          break;
        case Modality::sign:
          b.cat[0][e.value > 0 ? 0 : 1] += 1;
          break;
        case Modality::dyad4:
          b.cat[s][static_cast<int>(e.value) - 1] += 1;
          break;
      }
    }
  }
}

double BlockLedger::score_from_buckets(const Partition& part, int i, int k,
                                       const std::vector<Bucket>& buckets) const {
  const int labels = part.num_labels();
  const int layers = data_->num_layers();
  const Modality modality = data_->modality();
  static const BlockStats kEmpty{};
  double score = 0.0;

  for (int c = 0; c < labels; ++c) {
    const std::int64_t partners = part.size(c);  // i is detached
    bool any = partners != 0;
    for (int l = 0; l < layers && !any; ++l) {
      any = buckets[static_cast<std::size_t>(l) * labels + c].any;
    }
    if (!any) continue;

    const bool diagonal = c == k;
    const Family& fam = spec_->family_for(diagonal);
    const int ndirs = (!unordered_ && !diagonal) ? 2 : 1;
    for (int dir = 0; dir < ndirs; ++dir) {
      const int br = dir == 0 ? k : c;
      const int bs = dir == 0 ? c : k;
      for (int l = 0; l < layers; ++l) {
        const Bucket& b = buckets[static_cast<std::size_t>(l) * labels + c];
        const bool have_block = k < cap_ && c < cap_;
        const BlockStats& before = have_block ? stats_[slot(l, br, bs)] : kEmpty;
        BlockStats after = before;
        // Dyad-count gain: the new dyads (i, j in c).
        if (unordered_) {
          after.n += partners;
        } else if (diagonal) {
          after.n += 2 * partners;
        } else {
          after.n += partners;
        }
        switch (modality) {
          case Modality::binary:
          case Modality::count:
            if (unordered_) {
              after.cat[0] += b.cat[0][0];
            } else if (diagonal) {
              after.cat[0] += b.cat[0][0] + b.cat[1][0];
            } else {
              after.cat[0] += dir == 0 ? b.cat[0][0] : b.cat[1][0];
            }
            break;
          case Modality::real:
            if (unordered_) {
              after.sum_y.add(b.sy[0]);
              after.sum_y2.add(b.sy2[0]);
            } else if (diagonal) {
              after.sum_y.add(b.sy[0] + b.sy[1]);
              after.sum_y2.add(b.sy2[0] + b.sy2[1]);
            } else {
              after.sum_y.add(dir == 0 ? b.sy[0] : b.sy[1]);
              after.sum_y2.add(dir == 0 ? b.sy2[0] : b.sy2[1]);
            }
            break;
          case Modality::sign:
            after.cat[0] += b.cat[0][0];
            after.cat[1] += b.cat[0][1];
            break;
          case Modality::dyad4: {
            // Slot 0 holds pairs where i is the lower node index.
            for (int s = 0; s < 3; ++s) {
              if (b.cat[0][s] != 0) {
                after.cat[dyad4_category(s + 1, k, c)] += b.cat[0][s];
              }
              if (b.cat[1][s] != 0) {
                after.cat[dyad4_category(s + 1, c, k)] += b.cat[1][s];
              }
            }
            break;
          }
        }
        if (spec_->uses_zip_indicators()) {
          after.cat[0] += b.zip_m;
          after.cat[1] += b.zip_s;
        }
        const double lm_before =
            have_block ? cache_[slot(l, br, bs)]
                       : family_log_marginal(fam, kEmpty, modality, spec_->drop_constants);
        score += family_log_marginal(fam, after, modality, spec_->drop_constants) -
                 lm_before;
      }
    }
  }
  (void)i;
  return score;
}

double BlockLedger::score_move(const Partition& part, int i, int k,
                               const ZipIndicators* zip) const {
  if (!part.is_detached(i)) throw std::invalid_argument("score_move: node must be detached");
  std::vector<Bucket> buckets;
  bucket_node(part, i, zip, buckets);
  return score_from_buckets(part, i, k, buckets);
}

void BlockLedger::score_moves(const Partition& part, int i, int num_candidates,
                              const ZipIndicators* zip, double* out) const {
  if (!part.is_detached(i)) throw std::invalid_argument("score_moves: node must be detached");
  std::vector<Bucket> buckets;
  bucket_node(part, i, zip, buckets);
  for (int k = 0; k < num_candidates; ++k) {
    out[k] = score_from_buckets(part, i, k, buckets);
  }
}

std::int64_t BlockLedger::dyads_tracked() const {
  std::int64_t total = 0;
  for (int r = 0; r < cap_; ++r) {
    for (int s = 0; s < cap_; ++s) {
      if (unordered_ && s < r) continue;
      total += stats_[slot(0, r, s)].n;
    }
  }
  return total;
}

std::vector<std::pair<int, int>> BlockLedger::block_keys(int k, bool unordered) {
  std::vector<std::pair<int, int>> keys;
  for (int r = 0; r < k; ++r) {
    for (int s = unordered ? r : 0; s < k; ++s) keys.emplace_back(r, s);
  }
  return keys;
}

BlockLedger init_ledger(const DyadData& data, const Partition& part,
                        const FamilySpec& spec, const ZipIndicators* zip) {
  BlockLedger ledger(data, spec);
  ledger.init(part, zip);
  return ledger;
}

}  // namespace csbm
