// SPDX-License-Identifier: Apache-2.0
#include "fewbody.h"

#include <cmath>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "fewbody/config.hpp"

using namespace fewbody;

struct fbt_result {
    bool is_bench = false;
    Report report;
    std::vector<BenchRow> rows;
    std::string cached; // last formatted report, owned by the handle
};

namespace {

thread_local int g_error_code = 0;
thread_local std::string g_error_msg;

void clear_error() {
    g_error_code = 0;
    g_error_msg.clear();
}

// 3: the computation itself broke down; 2: the request was invalid.
int classify(ErrorCode c) {
    switch (c) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::IntegrationFailure:
    case ErrorCode::DegenerateBasis:
    case ErrorCode::NoSolution:
    case ErrorCode::OutOfRange:
        return 3;
    default:
        return 2;
    }
}

void set_error(int code, const std::string& msg) {
    g_error_code = code;
    g_error_msg = msg;
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
    clear_error();
    try {
        return fn();
    } catch (const Error& e) {
        set_error(classify(e.code()), e.what());
    } catch (const std::exception& e) {
        set_error(3, e.what());
    } catch (...) {
        set_error(3, "unknown error");
    }
    return {};
}

} // namespace

extern "C" {

fbt_result* fbt_run_json(const char* config_json) {
    return guarded([&]() -> fbt_result* {
        if (!config_json)
            throw ConfigError("null config document");
        const RunSpec spec = parse_config(config_json);
        auto* res = new fbt_result;
        try {
            res->report = run(spec);
        } catch (...) {
            delete res;
            throw;
        }
        return res;
    });
}

fbt_result* fbt_bench_json(const char* config_json, const int* nmax_list, size_t count) {
    return guarded([&]() -> fbt_result* {
        if (!config_json)
            throw ConfigError("null config document");
        if (!nmax_list || count == 0)
            throw ConfigError("bench: empty nmax list");
        const RunSpec spec = parse_config(config_json);
        const std::vector<int> list(nmax_list, nmax_list + count);
        auto* res = new fbt_result;
        res->is_bench = true;
        try {
            res->rows = run_bench(spec, list);
        } catch (...) {
            delete res;
            throw;
        }
        return res;
    });
}

size_t fbt_result_count(const fbt_result* res) {
    clear_error();
    if (!res) {
        set_error(2, "null result handle");
        return 0;
    }
    return res->is_bench ? res->rows.size() : res->report.energies.size();
}

double fbt_result_energy(const fbt_result* res, size_t i) {
    clear_error();
    if (!res) {
        set_error(2, "null result handle");
        return std::nan("");
    }
    if (res->is_bench) {
        if (i >= res->rows.size()) {
            set_error(2, "bench row index out of range");
            return std::nan("");
        }
        return res->rows[i].lowest;
    }
    if (i >= res->report.energies.size()) {
        set_error(2, "state index out of range");
        return std::nan("");
    }
    return res->report.energies[i];
}

const char* fbt_result_report(fbt_result* res, const char* format) {
    return guarded([&]() -> const char* {
        if (!res)
            throw ConfigError("null result handle");
        const std::string fmt = format ? format : "json";
        if (fmt != "json" && fmt != "csv")
            throw ConfigError("format must be json or csv");
        if (res->is_bench)
            res->cached = fmt == "json" ? bench_json(res->rows) : bench_csv(res->rows);
        else
            res->cached = fmt == "json" ? report_json(res->report) : report_csv(res->report);
        return res->cached.c_str();
    });
}

int fbt_result_write(fbt_result* res, const char* format, const char* path) {
    const char* ok = guarded([&]() -> const char* {
        if (!res)
            throw ConfigError("null result handle");
        if (!path)
            throw ConfigError("null output path");
        const std::string fmt = format ? format : "json";
        if (res->is_bench) {
            if (fmt != "json" && fmt != "csv")
                throw ConfigError("format must be json or csv");
            std::ofstream out(path);
            if (!out)
                throw IoError(std::string("cannot open report file: ") + path);
            out << (fmt == "json" ? bench_json(res->rows) : bench_csv(res->rows));
            if (!out)
                throw IoError(std::string("failed writing report file: ") + path);
        } else {
            emit_report(res->report, fmt, path);
        }
        return "";
    });
    return ok ? 0 : g_error_code;
}

void fbt_result_free(fbt_result* res) {
    delete res;
}

int fbt_last_error_code(void) {
    return g_error_code;
}

const char* fbt_last_error(void) {
    return g_error_msg.c_str();
}

} // extern "C"
