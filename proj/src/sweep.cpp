#include "powspec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace powspec {
namespace {

struct FieldTask {
    uint32_t p;
    uint32_t m;
    std::vector<uint64_t> ks;
};

struct Record {
    std::string line;     // one JSON object
    std::string failure;  // empty when the tuple passed
};

// single-consumer channel from the workers to the collector
class RecordQueue {
  public:
    void push(Record r) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            items_.push_back(std::move(r));
        }
        cv_.notify_one();
    }

    void close() {
        {
            std::lock_guard<std::mutex> lock(mu_);
            closed_ = true;
        }
        cv_.notify_one();
    }

    bool pop(Record& out) {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
        if (items_.empty()) return false;
        out = std::move(items_.front());
        items_.pop_front();
        return true;
    }

  private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<Record> items_;
    bool closed_ = false;
};

std::vector<uint64_t> coprime_ks(uint64_t q) {
    std::vector<uint64_t> ks;
    for (uint64_t k = 1; k < q + 1; ++k)
        if (std::gcd(k, q + 1) == 1) ks.push_back(k);
    return ks;
}

Record verify_tuple(const FieldCtx& ctx, uint32_t p, uint32_t m, uint64_t k) {
    const PowerMapSpec map(p, m, k);
    AnalysisReport rep = analyze_with_ctx(ctx, map);
    rep.verdicts = run_verification(ctx, map);  // record the full battery

    Record rec;
    rec.line = report_to_json(rep, -1);  // one line per record
    if (!rep.pass()) {
        const auto bad = std::find_if(rep.verdicts.begin(), rep.verdicts.end(),
                                      [](const CheckResult& c) { return !c.pass; });
        rec.failure = "p=" + std::to_string(p) + " m=" + std::to_string(m) +
                      " k=" + std::to_string(k) + ": " + bad->name +
                      (bad->detail.empty() ? "" : ": " + bad->detail);
    }
    return rec;
}

}  // namespace

unsigned resolve_worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("POWSPEC_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < 1024) return unsigned(v);
        throw std::invalid_argument("POWSPEC_WORKERS must be a positive integer below 1024");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

SweepResult run_sweep(const SweepOptions& options, std::ostream* progress) {
    if (options.primes.empty()) throw std::invalid_argument("sweep: the prime list is empty");
    if (options.m_max < 1) throw std::invalid_argument("sweep: m_max must be >= 1");
    for (uint32_t p : options.primes)
        if (!is_prime(p))
            throw std::invalid_argument("sweep: " + std::to_string(p) + " is not prime");

    // validate the whole grid before any table is built
    std::vector<FieldTask> tasks;
    for (uint32_t p : options.primes) {
        uint64_t q = 1;
        for (uint32_t m = 1; m <= options.m_max; ++m) {
            q *= p;
            if (q > 4096)  // q^2 past the 2^24 table cap
                throw resource_cap_error("sweep: p=" + std::to_string(p) +
                                         " m=" + std::to_string(m) + " exceeds the table cap");
            FieldTask task{p, m, {}};
            if (options.k_list.empty()) {
                task.ks = coprime_ks(q);
            } else {
                for (uint64_t k : options.k_list)
                    if (std::gcd(k, q + 1) == 1) task.ks.push_back(k);
            }
            if (!task.ks.empty()) tasks.push_back(std::move(task));
        }
    }
    if (tasks.empty()) throw std::invalid_argument("sweep: no valid (p, m, k) tuples in the grid");

    std::ofstream out;
    if (!options.out_path.empty()) {
        out.open(options.out_path, std::ios::app);
        if (!out) throw std::invalid_argument("cannot open output file: " + options.out_path);
    }

    const unsigned workers =
        std::max(1u, std::min<unsigned>(resolve_worker_count(options.workers), unsigned(tasks.size())));

    RecordQueue queue;
    std::atomic<size_t> next_task{0};
    std::atomic<bool> worker_fault{false};
    std::string fault_message;
    std::mutex fault_mu;

    auto worker_fn = [&] {
        for (;;) {
            const size_t i = next_task.fetch_add(1);
            if (i >= tasks.size()) return;
            const FieldTask& task = tasks[i];
            try {
                const FieldCtx ctx = build_field(task.p, task.m);
                for (uint64_t k : task.ks) queue.push(verify_tuple(ctx, task.p, task.m, k));
            } catch (const std::exception& e) {
                {
                    std::lock_guard<std::mutex> lock(fault_mu);
                    if (fault_message.empty()) fault_message = e.what();
                }
                worker_fault = true;
                return;
            }
        }
    };

    SweepResult result;
    std::thread collector([&] {
        Record rec;
        while (queue.pop(rec)) {
            ++result.tuples;
            if (rec.failure.empty()) {
                ++result.passed;
            } else {
                ++result.failed;
                result.failures.push_back(rec.failure);
            }
            if (out.is_open()) out << rec.line << '\n';
        }
        if (out.is_open()) out.flush();
    });

    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
    queue.close();
    collector.join();

    if (worker_fault) throw std::logic_error("sweep worker fault: " + fault_message);

    std::sort(result.failures.begin(), result.failures.end());
    if (progress) {
        *progress << result.tuples << " tuples: " << result.passed << " passed, " << result.failed
                  << " failed\n";
        for (const auto& f : result.failures) *progress << "  " << f << '\n';
    }
    return result;
}

}  // namespace powspec
