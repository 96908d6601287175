#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hilb {

// Worker count resolution: explicit argument, else HILB_JOBS, else 1.
inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("HILB_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// Runs fn(i) for i in [0, n) across workers.  Each index writes only its own
// output slot, so results are deterministic regardless of scheduling.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    int per = (n + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        int lo = w * per, hi = std::min(n, lo + per);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace hilb
