// io.hpp -- CSV emission and the run manifest.
//
// Every CSV begins with a comment line carrying the manifest hash, then a
// header row, then data rows. Reals are printed with %.17g (17 significant
// digits round-trips a double exactly), so identical runs produce
// byte-identical files. The manifest itself is plain key=value text echoing
// the flags of the invocation; its 64-bit FNV-1a hash ties outputs to it.
#ifndef QWALK_IO_HPP
#define QWALK_IO_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/mixing.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

// Shortest %.17g representation; round-trips a double bit-exactly.
std::string format_real(double value);

// Ordered key=value provenance record for one CLI invocation.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value);
  void set(const std::string& key, double value);
  void set(const std::string& key, Index value);
  void set(const std::string& key, int value);

  // One "key=value\n" line per entry, in insertion order.
  std::string text() const;
  // FNV-1a 64-bit hash of text(), as 16 lowercase hex digits.
  std::string hash_hex() const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::uint64_t fnv1a_hash(const std::string& bytes);

// Create/overwrite `path` with `content`; throws std::runtime_error with the
// path in the message when the file cannot be opened.
void write_text_file(const std::string& path, const std::string& content);

// dir + "/" + name (no separator fiddling beyond that).
std::string join_path(const std::string& dir, const std::string& name);

// --- CSV writers -----------------------------------------------------------
// Each takes the manifest hash for the leading comment line and an optional
// extra comment (e.g. the limiting-distribution metadata line).

// Header `x,y,p`; rows ordered by x, then y.
void write_distribution_csv(std::ostream& out, const Distribution<double>& dist,
                            const std::string& manifest_hash,
                            const std::string& extra_comment = "");

// Header `kx,ky,re_lambda,im_lambda,theta`; four rows per momentum mode, in
// eigenpair order; theta is reported as 0 for the (0,0) mode.
void write_spectrum_csv(std::ostream& out, const EigenSystem<double>& system,
                        const std::string& manifest_hash);

// Header `t,tv_avg_to_pi,tv_inst_to_pi,tv_avg_to_uniform`; t = 1..horizon.
void write_mixing_trace_csv(std::ostream& out, const MixingTrace<double>& trace,
                            const std::string& manifest_hash);

// Header `N,epsilon,M_eps,I_eps,reached`; unreached times are -1, reached is
// 1/0.
void write_sweep_csv(std::ostream& out,
                     const std::vector<ExperimentRecord>& records,
                     const std::string& manifest_hash);

// Header `t,p_marked`; t = 0..t_max.
void write_search_trace_csv(std::ostream& out,
                            const std::vector<double>& marked_probability,
                            const std::string& manifest_hash);

// Header `N,epsilon,t_mix,reached`.
void write_classical_csv(std::ostream& out,
                         const std::vector<ClassicalRecord>& records,
                         const std::string& manifest_hash);

// Path-taking wrappers around the stream writers above.
void write_distribution_csv(const std::string& path,
                            const Distribution<double>& dist,
                            const std::string& manifest_hash,
                            const std::string& extra_comment = "");
void write_spectrum_csv(const std::string& path,
                        const EigenSystem<double>& system,
                        const std::string& manifest_hash);
void write_mixing_trace_csv(const std::string& path,
                            const MixingTrace<double>& trace,
                            const std::string& manifest_hash);
void write_sweep_csv(const std::string& path,
                     const std::vector<ExperimentRecord>& records,
                     const std::string& manifest_hash);
void write_search_trace_csv(const std::string& path,
                            const std::vector<double>& marked_probability,
                            const std::string& manifest_hash);
void write_classical_csv(const std::string& path,
                         const std::vector<ClassicalRecord>& records,
                         const std::string& manifest_hash);

}  // namespace qwalk

#endif  // QWALK_IO_HPP
