#pragma once

#include "leakywire/asymptotics.hpp"
#include "leakywire/bracketing.hpp"
#include "leakywire/comparison.hpp"
#include "leakywire/transverse.hpp"

#include <string>
#include <vector>

namespace leakywire {

/// %.17g — round-trips every double and keeps CSV output byte-stable.
std::string format_g17(double x);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// CSV builders (fixed column schemas, %.17g floats, '\n' line endings)
std::string spectrum_csv(const SpectrumResult& res);           // j,mu,refine_error
std::string bands_csv(const BandTable& table);                 // theta,j,mu
std::string squeeze_csv(const SqueezeReport& report);          // j,lower,center,upper,pass
std::string counting_csv(const CountingEstimate& est);
std::string transverse_csv(const std::vector<TransverseEigenvalue>& rows);
std::string semiclassical_csv(const SemiclassicalView& view);
std::string gap_csv(const GapReport& rep);

// JSON builders (nlohmann, 2-space indent, keys sorted by the library)
std::string spectrum_json(const SpectrumResult& res);
std::string bands_json(const BandTable& table, const GapReport& gaps);
std::string squeeze_json(const SqueezeReport& report);
std::string counting_json(const CountingEstimate& est);
std::string transverse_json(const std::vector<TransverseEigenvalue>& rows);
std::string semiclassical_json(const SemiclassicalView& view);

/// Human-readable squeeze table (the self-certification artifact).
std::string squeeze_text(const SqueezeReport& report);

/// gnuplot-ready band layout: one theta column followed by one column per band.
std::string bands_gnuplot(const BandTable& table);

} // namespace leakywire
