// SPDX-License-Identifier: Apache-2.0

#include "bwsts/rrt.hpp"

namespace bwsts {

bool omega_words_equal(std::span<const Letter> u, std::span<const Letter> s, std::span<const Letter> r) {
    if (s.empty() || r.empty()) throw InputError("omega_words_equal: periods must be non-empty");
    const std::size_t bound = u.size() + s.size() * r.size() + s.size() + r.size();
    for (std::size_t i = 0; i < bound; ++i) {
        Letter left = i < u.size() ? u[i] : s[(i - u.size()) % s.size()];
        Letter right = r[i % r.size()];
        if (left != right) return false;
    }
    return true;
}

bool check_fifo_infinite_iterability(const FifoMachine& machine, const FifoConfig& x,
                                     std::span<const Label> sigma) {
    auto once = fifo_run(machine, x, sigma);
    if (!once.stuck_at.has_value() && once.last.control == x.control) {
        auto actions = actions_of(machine, sigma);
        for (std::size_t c = 0; c < machine.channels.size(); ++c) {
            auto recv = recv_proj(actions, c);
            if (recv.empty()) continue;
            auto send = send_proj(actions, c);
            if (recv.size() > send.size()) return false;
            if (!omega_words_equal(x.contents[c].letters(), send, recv)) return false;
        }
        return true;
    }
    return false;
}

}  // namespace bwsts
