#include "rrdps/csv.hpp"

#include "rrdps/format.hpp"

namespace rrdps {

void write_sweep_csv(std::ostream& out,
                     const std::vector<SweepRecord>& records) {
    out << kSweepCsvHeader << '\n';
    for (const SweepRecord& r : records) {
        out << format_sig12(r.z_km) << ',' << r.train_len << ','
            << format_sig12(r.delta) << ',' << format_sig12(r.intensities[0])
            << ',' << format_sig12(r.intensities[1]) << ','
            << format_sig12(r.intensities[2]) << ','
            << format_sig12(r.intensities[3]) << ','
            << format_sig12(r.gain_signal) << ',' << format_sig12(r.qber_signal)
            << ',' << format_sig12(r.yields.q0_lower) << ','
            << format_sig12(r.yields.q1_lower) << ','
            << format_sig12(r.yields.q2_lower) << ',' << format_sig12(r.rate)
            << ',';
        if (r.rate_ratio) {
            out << format_sig12(*r.rate_ratio);
        }
        out << ',' << (r.feasible ? '1' : '0') << '\n';
    }
}

}  // namespace rrdps
