#include "hgatac/crossover.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgatac {

namespace {

void check_parents(const Chromosome& p1, const Chromosome& p2) {
    if (p1.size() == 0 || p1.size() != p2.size())
        throw std::invalid_argument("crossover needs equal-length nonempty parents");
}

void check_window(int n, int start, int len) {
    if (len < 0 || start < 0 || start + len > n)
        throw std::invalid_argument("crossover window out of range");
}

} // namespace

Chromosome ox1(const Chromosome& p1, const Chromosome& p2, int cut1, int cut2) {
    check_parents(p1, p2);
    const int n = p1.size();
    if (cut1 < 0 || cut2 < cut1 || cut2 >= n)
        throw std::invalid_argument("ox1 cut points out of range");

    Chromosome child;
    child.genes.assign(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (int i = cut1; i <= cut2; ++i) {
        child.genes[static_cast<std::size_t>(i)] = p1.genes[static_cast<std::size_t>(i)];
        used[static_cast<std::size_t>(p1.customer(i))] = true;
    }
    int write = (cut2 + 1) % n;
    for (int off = 0; off < n; ++off) {
        const int read = (cut2 + 1 + off) % n;
        const int gene = p2.genes[static_cast<std::size_t>(read)];
        if (used[static_cast<std::size_t>(std::abs(gene))]) continue;
        child.genes[static_cast<std::size_t>(write)] = gene;
        write = (write + 1) % n;
    }
    return child;
}

Chromosome ox2(const Chromosome& p1, const Chromosome& p2, const std::vector<int>& positions) {
    check_parents(p1, p2);
    const int n = p1.size();
    std::vector<bool> selected(static_cast<std::size_t>(n) + 1, false);
    for (int pos : positions) {
        if (pos < 0 || pos >= n) throw std::invalid_argument("ox2 position out of range");
        selected[static_cast<std::size_t>(p2.customer(pos))] = true;
    }
    std::vector<int> imposed; // the selected customers, as p2 genes in p2 order
    for (int i = 0; i < n; ++i)
        if (selected[static_cast<std::size_t>(p2.customer(i))])
            imposed.push_back(p2.genes[static_cast<std::size_t>(i)]);
    Chromosome child = p1;
    std::size_t next = 0;
    for (int i = 0; i < n; ++i) {
        if (selected[static_cast<std::size_t>(p1.customer(i))])
            child.genes[static_cast<std::size_t>(i)] = imposed[next++];
    }
    return child;
}

Chromosome tox1(const Chromosome& p1, const Chromosome& p2, NodeKind kind, int start, int len) {
    check_parents(p1, p2);
    const int n = p1.size();
    check_window(n, start, len);

    Chromosome child;
    child.genes.assign(static_cast<std::size_t>(n), 0);
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    for (int i = start; i < start + len; ++i) {
        const bool drone = p1.is_drone(i);
        if ((kind == NodeKind::Drone) != drone) continue;
        child.genes[static_cast<std::size_t>(i)] = p1.genes[static_cast<std::size_t>(i)];
        placed[static_cast<std::size_t>(p1.customer(i))] = true;
    }
    int write = 0;
    for (int read = 0; read < n; ++read) {
        const int gene = p2.genes[static_cast<std::size_t>(read)];
        if (placed[static_cast<std::size_t>(std::abs(gene))]) continue;
        while (child.genes[static_cast<std::size_t>(write)] != 0) ++write;
        child.genes[static_cast<std::size_t>(write)] = gene;
    }
    return child;
}

Chromosome tox2(const Chromosome& p1, const Chromosome& p2, int start, int len) {
    check_parents(p1, p2);
    const int n = p1.size();
    check_window(n, start, len);

    std::vector<int> sign_in_p1(static_cast<std::size_t>(n) + 1, 1);
    std::vector<int> sign_in_p2(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 0; i < n; ++i) {
        sign_in_p1[static_cast<std::size_t>(p1.customer(i))] = p1.is_drone(i) ? -1 : 1;
        sign_in_p2[static_cast<std::size_t>(p2.customer(i))] = p2.is_drone(i) ? -1 : 1;
    }

    Chromosome child;
    child.genes.assign(static_cast<std::size_t>(n), 0);
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    for (int i = start; i < start + len; ++i) {
        const int c = p1.customer(i);
        child.genes[static_cast<std::size_t>(i)] = sign_in_p2[static_cast<std::size_t>(c)] * c;
        placed[static_cast<std::size_t>(c)] = true;
    }
    int write = 0;
    for (int read = 0; read < n; ++read) {
        const int c = p2.customer(read);
        if (placed[static_cast<std::size_t>(c)]) continue;
        while (child.genes[static_cast<std::size_t>(write)] != 0) ++write;
        child.genes[static_cast<std::size_t>(write)] = sign_in_p1[static_cast<std::size_t>(c)] * c;
    }
    return child;
}

Chromosome crossover(const Chromosome& p1, const Chromosome& p2, Rng& rng) {
    check_parents(p1, p2);
    const int n = p1.size();
    const int which = uniform_int(rng, 0, 3);
    if (which == 0) {
        int a = uniform_int(rng, 0, n - 1);
        int b = uniform_int(rng, 0, n - 1);
        if (a > b) std::swap(a, b);
        return ox1(p1, p2, a, b);
    }
    if (which == 1) {
        std::vector<int> positions;
        for (int i = 0; i < n; ++i)
            if (chance(rng, 0.5)) positions.push_back(i);
        return ox2(p1, p2, positions);
    }
    int a = uniform_int(rng, 0, n - 1);
    int b = uniform_int(rng, 0, n - 1);
    if (a > b) std::swap(a, b);
    if (which == 2) {
        NodeKind kind = chance(rng, 0.5) ? NodeKind::Drone : NodeKind::Truck;
        return tox1(p1, p2, kind, a, b - a + 1);
    }
    return tox2(p1, p2, a, b - a + 1);
}

} // namespace hgatac
