#include "qwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwalk {

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}
void Manifest::set(const std::string& key, const char* value) {
  entries_.emplace_back(key, std::string(value));
}
void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, format_real(value));
}
void Manifest::set(const std::string& key, Index value) {
  entries_.emplace_back(key, std::to_string(value));
}
void Manifest::set(const std::string& key, int value) {
  entries_.emplace_back(key, std::to_string(value));
}

std::string Manifest::text() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string Manifest::hash_hex() const {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(text())));
  return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

namespace {

void comment_lines(std::ostream& out, const std::string& manifest_hash,
                   const std::string& extra_comment) {
  out << "# manifest " << manifest_hash << "\n";
  if (!extra_comment.empty()) out << "# " << extra_comment << "\n";
}

template <typename WriteFn>
void to_path(const std::string& path, WriteFn&& write) {
  std::ostringstream buffer;
  write(buffer);
  write_text_file(path, buffer.str());
}

}  // namespace

void write_distribution_csv(std::ostream& out, const Distribution<double>& dist,
                            const std::string& manifest_hash,
                            const std::string& extra_comment) {
  comment_lines(out, manifest_hash, extra_comment);
  out << "x,y,p\n";
  const Index side = dist.geometry.side();
  for (Index x = 0; x < side; ++x)
    for (Index y = 0; y < side; ++y)
      out << x << ',' << y << ',' << format_real(dist(x, y)) << "\n";
}

void write_spectrum_csv(std::ostream& out, const EigenSystem<double>& system,
                        const std::string& manifest_hash) {
  comment_lines(out, manifest_hash, "");
  out << "kx,ky,re_lambda,im_lambda,theta\n";
  const Index side = system.geometry.side();
  for (Index kx = 0; kx < side; ++kx) {
    for (Index ky = 0; ky < side; ++ky) {
      const ReducedBlock<double>& block = system.block(kx, ky);
      const double theta =
          (kx == 0 && ky == 0) ? 0.0 : theta_of_mode(system.geometry, kx, ky);
      for (const Eigenpair<double>& pair : block.eigenpairs) {
        out << kx << ',' << ky << ',' << format_real(pair.value.real()) << ','
            << format_real(pair.value.imag()) << ',' << format_real(theta)
            << "\n";
      }
    }
  }
}

void write_mixing_trace_csv(std::ostream& out, const MixingTrace<double>& trace,
                            const std::string& manifest_hash) {
  comment_lines(out, manifest_hash, "");
  out << "t,tv_avg_to_pi,tv_inst_to_pi,tv_avg_to_uniform\n";
  for (Index t = 1; t <= trace.horizon; ++t) {
    out << t << ',' << format_real(trace.avg_to_ref(t - 1)) << ','
        << format_real(trace.inst_to_ref(t - 1)) << ','
        << format_real(trace.avg_to_uniform(t - 1)) << "\n";
  }
}

void write_sweep_csv(std::ostream& out,
                     const std::vector<ExperimentRecord>& records,
                     const std::string& manifest_hash) {
  comment_lines(out, manifest_hash, "");
  out << "N,epsilon,M_eps,I_eps,reached\n";
  for (const ExperimentRecord& rec : records) {
    out << rec.side * rec.side << ',' << format_real(rec.epsilon) << ','
        << rec.m_eps << ',' << rec.i_eps << ',' << (rec.reached ? 1 : 0)
        << "\n";
  }
}

void write_search_trace_csv(std::ostream& out,
                            const std::vector<double>& marked_probability,
                            const std::string& manifest_hash) {
  comment_lines(out, manifest_hash, "");
  out << "t,p_marked\n";
  for (std::size_t t = 0; t < marked_probability.size(); ++t)
    out << t << ',' << format_real(marked_probability[t]) << "\n";
}

void write_classical_csv(std::ostream& out,
                         const std::vector<ClassicalRecord>& records,
                         const std::string& manifest_hash) {
  comment_lines(out, manifest_hash, "");
  out << "N,epsilon,t_mix,reached\n";
  for (const ClassicalRecord& rec : records) {
    out << rec.side * rec.side << ',' << format_real(rec.epsilon) << ','
        << rec.t_mix << ',' << (rec.reached ? 1 : 0) << "\n";
  }
}

void write_distribution_csv(const std::string& path,
                            const Distribution<double>& dist,
                            const std::string& manifest_hash,
                            const std::string& extra_comment) {
  to_path(path, [&](std::ostream& out) {
    write_distribution_csv(out, dist, manifest_hash, extra_comment);
  });
}
void write_spectrum_csv(const std::string& path,
                        const EigenSystem<double>& system,
                        const std::string& manifest_hash) {
  to_path(path, [&](std::ostream& out) {
    write_spectrum_csv(out, system, manifest_hash);
  });
}
void write_mixing_trace_csv(const std::string& path,
                            const MixingTrace<double>& trace,
                            const std::string& manifest_hash) {
  to_path(path, [&](std::ostream& out) {
    write_mixing_trace_csv(out, trace, manifest_hash);
  });
}
void write_sweep_csv(const std::string& path,
                     const std::vector<ExperimentRecord>& records,
                     const std::string& manifest_hash) {
  to_path(path, [&](std::ostream& out) {
    write_sweep_csv(out, records, manifest_hash);
  });
}
void write_search_trace_csv(const std::string& path,
                            const std::vector<double>& marked_probability,
                            const std::string& manifest_hash) {
  to_path(path, [&](std::ostream& out) {
    write_search_trace_csv(out, marked_probability, manifest_hash);
  });
}
void write_classical_csv(const std::string& path,
                         const std::vector<ClassicalRecord>& records,
                         const std::string& manifest_hash) {
  to_path(path, [&](std::ostream& out) {
    write_classical_csv(out, records, manifest_hash);
  });
}

}  // namespace qwalk
