#include "replywatch/token_automaton.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace replywatch {

TokenAutomaton::TokenId TokenAutomaton::intern(const std::string& token) {
  const auto next = static_cast<TokenId>(vocabulary_.size() + 1);
  return vocabulary_.try_emplace(token, next).first->second;
}

TokenAutomaton::TokenId TokenAutomaton::id_of(std::string_view token) const {
  const auto it = vocabulary_.find(std::string(token));
  return it == vocabulary_.end() ? kUnknown : it->second;
}

std::uint32_t TokenAutomaton::child(std::uint32_t node, TokenId t) const {
  const auto& edges = nodes_[node].edges;
  const auto it = std::lower_bound(
      edges.begin(), edges.end(), t,
      [](const std::pair<TokenId, std::uint32_t>& e, TokenId v) { return e.first < v; });
  if (it == edges.end() || it->first != t) return 0;
  return it->second;
}

void TokenAutomaton::add_pattern(std::span<const std::string> tokens,
                                 std::uint32_t pattern) {
  if (built_) throw std::logic_error("TokenAutomaton: add_pattern after build");
  if (tokens.empty()) throw std::invalid_argument("TokenAutomaton: empty pattern");
  std::uint32_t node = 0;
  for (const std::string& tok : tokens) {
    const TokenId id = intern(tok);
    auto& edges = nodes_[node].edges;
    const auto it = std::lower_bound(
        edges.begin(), edges.end(), id,
        [](const std::pair<TokenId, std::uint32_t>& e, TokenId v) { return e.first < v; });
    if (it != edges.end() && it->first == id) {
      node = it->second;
      continue;
    }
    const auto fresh = static_cast<std::uint32_t>(nodes_.size());
    const std::uint32_t depth = nodes_[node].depth + 1;
    edges.insert(it, {id, fresh});
    nodes_.push_back(Node{});
    nodes_.back().depth = depth;
    node = fresh;
  }
  auto& outs = nodes_[node].outputs;
  if (std::find(outs.begin(), outs.end(), pattern) == outs.end()) {
    outs.push_back(pattern);
    std::sort(outs.begin(), outs.end());
  }
  ++pattern_count_;
}

void TokenAutomaton::build() {
  std::deque<std::uint32_t> queue;
  for (const auto& [tok, c] : nodes_[0].edges) {
    nodes_[c].fail = 0;
    nodes_[c].output_link = 0;
    queue.push_back(c);
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const auto& [tok, v] : nodes_[u].edges) {
      std::uint32_t f = nodes_[u].fail;
      while (f != 0 && child(f, tok) == 0) f = nodes_[f].fail;
      const std::uint32_t target = child(f, tok);
      nodes_[v].fail = (target == v) ? 0 : target;
      const std::uint32_t vf = nodes_[v].fail;
      nodes_[v].output_link = nodes_[vf].outputs.empty() ? nodes_[vf].output_link : vf;
      queue.push_back(v);
    }
  }
  built_ = true;
}

void TokenAutomaton::scan(std::span<const TokenId> text, std::vector<Hit>* out) const {
  if (!built_) throw std::logic_error("TokenAutomaton: scan before build");
  std::uint32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const TokenId t = text[i];
    if (t == kUnknown) {
      state = 0;
      continue;
    }
    std::uint32_t next = child(state, t);
    while (next == 0 && state != 0) {
      state = nodes_[state].fail;
      next = child(state, t);
    }
    state = next;
    for (std::uint32_t n = nodes_[state].outputs.empty() ? nodes_[state].output_link : state;
         n != 0; n = nodes_[n].output_link) {
      const std::size_t len = nodes_[n].depth;
      for (const std::uint32_t p : nodes_[n].outputs) {
        out->push_back({i + 1 - len, i + 1, p});
      }
    }
  }
}

}  // namespace replywatch
