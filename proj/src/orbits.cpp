#include "twc/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

namespace twc::orbits {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 28;

std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

KeySet::KeySet(std::uint64_t universe) {
  if (universe <= kDenseLimit) {
    bits_.assign((universe + 63) / 64, 0);
  } else {
    dense_ = false;
    hashed_.assign(1 << 16, 0);
  }
}

bool KeySet::insert(LineKey k) {
  if (dense_) {
    std::uint64_t& word = bits_[k >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (k & 63);
    if (word & bit) return false;
    word |= bit;
    ++size_;
    return true;
  }
  if (2 * (size_ + 1) > hashed_.size()) grow();
  const std::uint64_t mask = hashed_.size() - 1;
  for (std::uint64_t h = mix(k) & mask;; h = (h + 1) & mask) {
    if (hashed_[h] == k + 1) return false;
    if (hashed_[h] == 0) {
      hashed_[h] = k + 1;
      ++size_;
      return true;
    }
  }
}

bool KeySet::contains(LineKey k) const {
  if (dense_) return (bits_[k >> 6] >> (k & 63)) & 1;
  const std::uint64_t mask = hashed_.size() - 1;
  for (std::uint64_t h = mix(k) & mask;; h = (h + 1) & mask) {
    if (hashed_[h] == k + 1) return true;
    if (hashed_[h] == 0) return false;
  }
}

void KeySet::grow() {
  std::vector<LineKey> old(hashed_.size() * 2, 0);
  old.swap(hashed_);
  const std::uint64_t mask = hashed_.size() - 1;
  for (const LineKey e : old) {
    if (e == 0) continue;
    std::uint64_t h = mix(e - 1) & mask;
    while (hashed_[h] != 0) h = (h + 1) & mask;
    hashed_[h] = e;
  }
}

Engine::Engine(const cubic::TwistedCubic& cubic, const group::Gq& group, EngineOptions options)
    : cubic_(&cubic), group_(&group), options_(options), generators_(group.generators()) {}

LineKey Engine::image_key(std::size_t generator, LineKey k) const {
  const pg3::LineBasis b = space().basis_from_key(k);
  const group::Mat4& m = generators_[generator].mat;
  return space().key_of_span(group_->apply(m, b.u), group_->apply(m, b.v));
}

OrbitResult Engine::orbit_of_line(const Line& l, bool keep_members) const {
  OrbitResult out;
  out.seed = space().key(l);
  out.representative = out.seed;
  KeySet seen(space().line_count());
  std::vector<LineKey> frontier{out.seed};
  seen.insert(out.seed);
  if (keep_members) out.members.push_back(out.seed);
  while (!frontier.empty()) {
    const LineKey cur = frontier.back();
    frontier.pop_back();
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const LineKey next = image_key(g, cur);
      if (!seen.insert(next)) continue;
      out.representative = std::min(out.representative, next);
      frontier.push_back(next);
      if (keep_members) out.members.push_back(next);
    }
  }
  out.size = seen.size();
  std::sort(out.members.begin(), out.members.end());
  out.stabilizer = stabilizer_of_line(l);
  if (out.size * out.stabilizer.size() != group_->order()) {
    throw Error(ErrorCode::NotClosed, "orbit-stabilizer identity fails for " + space().format(l));
  }
  return out;
}

std::uint64_t Engine::orbit_size(const Line& l) const {
  KeySet seen(space().line_count());
  const LineKey seed = space().key(l);
  std::vector<LineKey> frontier{seed};
  seen.insert(seed);
  while (!frontier.empty()) {
    const LineKey cur = frontier.back();
    frontier.pop_back();
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const LineKey next = image_key(g, cur);
      if (seen.insert(next)) frontier.push_back(next);
    }
  }
  return seen.size();
}

std::vector<LineKey> Engine::orbit_members(const Line& l) const {
  KeySet seen(space().line_count());
  const LineKey seed = space().key(l);
  std::vector<LineKey> members{seed};
  seen.insert(seed);
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const LineKey next = image_key(g, members[head]);
      if (seen.insert(next)) members.push_back(next);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<Projectivity> Engine::full_scan(const Line& l) const {
  std::call_once(elements_once_, [&] { elements_ = group_->enumerate(); });
  std::vector<Projectivity> out;
  for (const Projectivity& g : elements_) {
    if (group_->act_line(g.mat, l) == l) out.push_back(g);
  }
  return out;
}

std::vector<Projectivity> Engine::stabilizer_of_line(const Line& l) const {
  if (space().q() <= options_.full_scan_max_q) return full_scan(l);
  const std::uint64_t size = orbit_size(l);
  if (group_->order() % size != 0) throw Error(ErrorCode::NotClosed, "orbit length does not divide |G_q|");
  return stabilizer_by_schreier(l, group_->order() / size);
}

std::vector<Projectivity> Engine::stabilizer_by_schreier(const Line& l, std::uint64_t expected_order) const {
  const group::Gq& G = *group_;
  std::vector<Projectivity> found{G.identity()};
  if (expected_order <= 1) return found;

  // BFS tree: each visited key remembers its parent and the generator used.
  const LineKey seed = space().key(l);
  std::unordered_map<LineKey, std::pair<LineKey, std::uint8_t>> tree;
  tree.emplace(seed, std::pair<LineKey, std::uint8_t>{seed, 0});
  std::vector<LineKey> queue{seed};

  auto transversal = [&](LineKey k) {
    std::vector<std::uint8_t> word;
    while (k != seed) {
      const auto& [parent, gen] = tree.at(k);
      word.push_back(gen);
      k = parent;
    }
    Projectivity t = G.identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = G.compose(t, generators_[*it]);
    return t;
  };

  std::set<Projectivity> group_set{found.front()};
  auto absorb = [&](const Projectivity& s) {
    if (group_set.contains(s)) return;
    // Close the set under composition with the new element.
    std::vector<Projectivity> pending{s};
    while (!pending.empty()) {
      const Projectivity x = pending.back();
      pending.pop_back();
      if (!group_set.insert(x).second) continue;
      const std::vector<Projectivity> snapshot(group_set.begin(), group_set.end());
      for (const Projectivity& y : snapshot) {
        for (const Projectivity& z : {G.compose(x, y), G.compose(y, x)}) {
          if (!group_set.contains(z)) pending.push_back(z);
        }
      }
    }
  };

  for (std::size_t head = 0; head < queue.size() && group_set.size() < expected_order; ++head) {
    const LineKey cur = queue[head];
    for (std::uint8_t g = 0; g < generators_.size() && group_set.size() < expected_order; ++g) {
      const LineKey next = image_key(g, cur);
      if (tree.emplace(next, std::pair<LineKey, std::uint8_t>{cur, g}).second) {
        queue.push_back(next);
        continue;
      }
      const Projectivity s = G.compose(G.compose(transversal(cur), generators_[g]), G.inverse(transversal(next)));
      if (!G.is_identity(s)) absorb(s);
    }
  }
  return {group_set.begin(), group_set.end()};
}

bool Engine::same_orbit(const Line& a, const Line& b) const {
  const LineKey target = space().key(b);
  const LineKey seed = space().key(a);
  if (seed == target) return true;
  KeySet seen(space().line_count());
  std::vector<LineKey> frontier{seed};
  seen.insert(seed);
  while (!frontier.empty()) {
    const LineKey cur = frontier.back();
    frontier.pop_back();
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const LineKey next = image_key(g, cur);
      if (next == target) return true;
      if (seen.insert(next)) frontier.push_back(next);
    }
  }
  return false;
}

OrbitCensus Engine::partition(const PartitionOptions& options) const {
  const std::uint64_t total = space().line_count();
  const unsigned workers = std::max(1u, options.workers);
  std::vector<std::atomic<std::uint32_t>> owner(total);
  std::atomic<std::uint64_t> cursor{0};
  std::atomic<std::uint32_t> next_id{1};

  struct Partial {
    std::uint32_t id;
    LineKey min_key;
    std::uint64_t count;
  };
  struct WorkerOut {
    std::vector<Partial> partials;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> unions;
  };
  std::vector<WorkerOut> outs(workers);

  auto run = [&](unsigned w) {
    WorkerOut& out = outs[w];
    std::vector<LineKey> stack;
    std::set<std::uint32_t> touched;
    constexpr std::uint64_t kChunk = 4096;
    for (;;) {
      const std::uint64_t lo = cursor.fetch_add(kChunk);
      if (lo >= total) break;
      const std::uint64_t hi = std::min(total, lo + kChunk);
      for (LineKey k = lo; k < hi; ++k) {
        if (owner[k].load(std::memory_order_relaxed) != 0) continue;
        if (options.filter && cubic_->classify(space().line_from_key(k)).tag != *options.filter) continue;
        const std::uint32_t id = next_id.fetch_add(1);
        std::uint32_t expected = 0;
        if (!owner[k].compare_exchange_strong(expected, id)) continue;
        Partial part{id, k, 1};
        touched.clear();
        stack.assign(1, k);
        while (!stack.empty()) {
          const LineKey cur = stack.back();
          stack.pop_back();
          for (std::size_t g = 0; g < generators_.size(); ++g) {
            const LineKey next = image_key(g, cur);
            std::uint32_t seen = 0;
            if (owner[next].compare_exchange_strong(seen, id)) {
              ++part.count;
              part.min_key = std::min(part.min_key, next);
              stack.push_back(next);
            } else if (seen != id && touched.insert(seen).second) {
              out.unions.emplace_back(id, seen);
            }
          }
        }
        out.partials.push_back(part);
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  std::vector<std::uint32_t> parent(next_id.load());
  std::iota(parent.begin(), parent.end(), 0u);
  for (const WorkerOut& out : outs) {
    for (const auto& [x, y] : out.unions) {
      const std::uint32_t rx = find_root(parent, x), ry = find_root(parent, y);
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  }
  std::map<std::uint32_t, OrbitRecord> merged;
  for (const WorkerOut& out : outs) {
    for (const Partial& part : out.partials) {
      auto it = merged.try_emplace(find_root(parent, part.id), OrbitRecord{part.min_key, 0, 0}).first;
      it->second.representative = std::min(it->second.representative, part.min_key);
      it->second.length += part.count;
    }
  }

  OrbitCensus census;
  census.q = space().q();
  census.filter = options.filter;
  for (const auto& [root, rec] : merged) census.orbits.push_back(rec);
  std::sort(census.orbits.begin(), census.orbits.end(),
            [](const OrbitRecord& x, const OrbitRecord& y) { return x.representative < y.representative; });
  for (OrbitRecord& rec : census.orbits) {
    ++census.lengths[rec.length];
    census.covered += rec.length;
    if (options.verify_stabilizers) {
      if (group_->order() % rec.length != 0) throw Error(ErrorCode::NotClosed, "orbit length does not divide |G_q|");
      const std::uint64_t expected = group_->order() / rec.length;
      const Line l = space().line_from_key(rec.representative);
      const auto stab =
          space().q() <= options_.full_scan_max_q ? full_scan(l) : stabilizer_by_schreier(l, expected);
      rec.stabilizer_order = stab.size();
      if (rec.stabilizer_order != expected) {
        throw Error(ErrorCode::NotClosed, "orbit-stabilizer identity fails for " + space().format(l));
      }
    }
  }
  return census;
}

}  // namespace twc::orbits
