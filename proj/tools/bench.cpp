// Times the evaluation pipeline's serial reference path against the
// OpenMP-parallel path on a generated corpus and checks that both produce
// identical reports.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef RAPIDBENCH_HAVE_OPENMP
#include <omp.h>
#endif

#include "rapidbench/eval.hpp"

using namespace rapidbench;

namespace {

double run_once(const std::vector<TaskInstance>& corpus, const EvalConfig& cfg,
                ModelClient& client, std::string* json_out) {
    auto t0 = std::chrono::steady_clock::now();
    EvalReport report = run_eval(corpus, cfg, client);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *json_out = report.to_json().dump();
    return seconds;
}

}  // namespace

int main(int argc, char** argv) {
    int count = 300;
    int threads = 0;  // 0: use the hardware default
    int repeats = 3;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--count" && i + 1 < argc)
            count = std::atoi(argv[++i]);
        else if (arg == "--threads" && i + 1 < argc)
            threads = std::atoi(argv[++i]);
        else if (arg == "--repeats" && i + 1 < argc)
            repeats = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--count N] [--threads N] [--repeats N]\n", argv[0]);
            return 2;
        }
    }
#ifdef RAPIDBENCH_HAVE_OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    if (threads <= 0) threads = 1;
    std::fprintf(stderr, "note: built without OpenMP; the parallel path runs serially\n");
#endif

    GenConfig gen;
    gen.seed = 2024;
    gen.count = count;
    std::vector<TaskInstance> corpus = generate_corpus(gen);

    EvalConfig cfg;
    cfg.corpus_manifest = "<in-memory>";
    cfg.seed = 2024;
    cfg.shots = 2;
    cfg.retrieval = RetrievalMode::Lexical;
    cfg.model.kind = "mock";
    cfg.model.error_rate = 0.2;
    cfg.config_hash = "bench";
    OracleMockClient client(corpus, cfg.seed, cfg.model.error_rate);

    std::printf("instances: %d (x2 languages), shots: %d, retrieval: lexical\n\n", count, cfg.shots);
    std::printf("%-10s %-10s %-12s\n", "path", "threads", "seconds");

    std::string serial_json, parallel_json;
    double serial_best = 1e30, parallel_best = 1e30;
    for (int r = 0; r < repeats; ++r) {
        cfg.parallelism = 1;
        serial_best = std::min(serial_best, run_once(corpus, cfg, client, &serial_json));
        cfg.parallelism = threads;
        parallel_best = std::min(parallel_best, run_once(corpus, cfg, client, &parallel_json));
    }
    std::printf("%-10s %-10d %-12.3f\n", "serial", 1, serial_best);
    std::printf("%-10s %-10d %-12.3f\n", "openmp", threads, parallel_best);
    std::printf("\nspeedup: %.2fx\n", serial_best / parallel_best);

    if (serial_json != parallel_json) {
        std::fprintf(stderr, "FAIL: parallel report differs from the serial reference\n");
        return 1;
    }
    std::printf("reports identical: yes\n");
    return 0;
}
