#pragma once

#include <filesystem>

#include "chordal/analysis.hpp"
#include "chordal/types.hpp"

namespace chordal {

// IQ CSV:      "# fs=<float>" / "I,Q" / "<float>,<float>" per line, LF endings.
// Motion CSV:  "# fs=<float>" / "x"   / "<float>" per line.
// Spectrum CSV:"# df=<float>" / "f,mag" / "<float>,<float>" per line.
// Values are written with 17 significant digits so round trips are lossless.

IqSeries read_iq_csv(const std::filesystem::path& path);
void write_iq_csv(const IqSeries& iq, const std::filesystem::path& path);

MotionTrace read_motion_csv(const std::filesystem::path& path);
void write_motion_csv(const MotionTrace& trace, const std::filesystem::path& path);

void write_spectrum_csv(const Spectrum& spec, const std::filesystem::path& path);

}  // namespace chordal
