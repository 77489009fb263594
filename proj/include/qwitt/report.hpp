#ifndef QWITT_REPORT_HPP
#define QWITT_REPORT_HPP

#include <string>
#include <vector>

#include "qwitt/cochain.hpp"
#include "qwitt/h2solver.hpp"

namespace qwitt {

// Report emitters.  Field order is fixed and every value is derived from the
// computation alone, so equal inputs give byte-equal output.

inline Json report_json(const SectorReport& r) {
    Json j;
    j["parity"] = r.parity == 0 ? "even" : "odd";
    j["s"] = r.s;
    j["N"] = r.N;
    j["N_core"] = r.N_core;
    j["mode"] = r.mode;
    j["dim_Z_window"] = r.dim_Z_window;
    j["dim_Z_core"] = r.dim_Z_core;
    j["dim_B_core"] = r.dim_B_core;
    j["dim_H2_core"] = r.dim_H2_core;
    j["kernel_reduced"] = r.kernel_reduced;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

inline Json report_json(const std::vector<SectorReport>& reports) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr;
}

inline std::string csv_header() {
    return "parity,s,N,N_core,mode,dim_Z_core,dim_B_core,dim_H2_core,wall_time_ms";
}

inline std::string csv_row(const SectorReport& r) {
    std::string line = r.parity == 0 ? "even" : "odd";
    line += ',';
    line += std::to_string(r.s);
    line += ',';
    line += std::to_string(r.N);
    line += ',';
    line += std::to_string(r.N_core);
    line += ',';
    line += r.mode;  // never contains a comma ("symbolic" / "sampled q=p/r")
    line += ',';
    line += std::to_string(r.dim_Z_core);
    line += ',';
    line += std::to_string(r.dim_B_core);
    line += ',';
    line += std::to_string(r.dim_H2_core);
    line += ',';
    line += std::to_string(r.wall_time_ms);
    return line;
}

inline std::string report_csv(const std::vector<SectorReport>& reports) {
    std::string out = csv_header();
    out += '\n';
    for (const auto& r : reports) {
        out += csv_row(r);
        out += '\n';
    }
    return out;
}

template <class Ctx, class K = typename Ctx::K>
Json certificate_json(const Ctx& F, const Certificate<K>& cert, const Window& w) {
    Json j;
    j["kind"] = "certificate";
    j["core_exact"] = cert.core_exact;
    j["g"] = cochain1_json(F, cert.g);
    j["residual"] = cochain2_json(F, cert.residual, w);
    return j;
}

}  // namespace qwitt

#endif
