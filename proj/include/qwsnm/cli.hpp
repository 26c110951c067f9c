#pragma once

namespace qwsnm {

// Full command-line surface (degrade / denoise / deblur / bench); returns
// the process exit code. Factored out of main() so tests can drive it.
int run_cli(int argc, const char* const* argv);

}  // namespace qwsnm
