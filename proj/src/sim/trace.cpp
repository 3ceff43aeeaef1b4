#include "sim/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace squall::sim {

// Schema v1. Keep in sync with docs/trace_format.md.
static constexpr const char* kHeader =
    "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,"
    "fx_true,fy_true,fz_true,etax_true,etay_true,etaz_true,"
    "meas_fresh,zpx,zpy,zpz,zvx,zvy,zvz,zroll,zpitch,zyaw,zwx,zwy,zwz,"
    "fx_hat,fy_hat,fz_hat,etax_hat,etay_hat,etaz_hat,"
    "var_fx,var_fy,var_fz,var_etax,var_etay,var_etaz,"
    "cmd_thrust,cmd_roll,cmd_pitch,cmd_yaw,esc0,esc1,esc2,esc3,saturated,"
    "ctrl_event,est_event,qp_iterations,kkt_residual,max_slack,error_flag";

const char* SimTrace::csv_header() { return kHeader; }

namespace {

void put(FILE* f, double v, bool last = false) {
  std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
}
void put(FILE* f, int v) { std::fprintf(f, "%d,", v); }
void put3(FILE* f, const geom::Vec3& v) {
  put(f, v.x);
  put(f, v.y);
  put(f, v.z);
}

}  // namespace

void SimTrace::write_csv(const std::string& path) const {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "# squall-trace v1\n%s\n", kHeader);
  for (const auto& r : rows) {
    put(f, r.t);
    put3(f, r.p);
    put3(f, r.v);
    put(f, r.q.w); put(f, r.q.x); put(f, r.q.y); put(f, r.q.z);
    put3(f, r.omega);
    put3(f, r.f_ext_true);
    put3(f, r.eta_ext_true);
    put(f, r.meas_fresh);
    put3(f, r.z_p);
    put3(f, r.z_v);
    put3(f, r.z_att);
    put3(f, r.z_omega);
    put3(f, r.f_hat);
    put3(f, r.eta_hat);
    put3(f, r.var_f);
    put3(f, r.var_eta);
    put(f, r.cmd_thrust);
    put3(f, r.cmd_att);
    for (double e : r.esc) put(f, e);
    put(f, r.saturated);
    put(f, r.ctrl_event);
    put(f, r.est_event);
    put(f, r.qp_iterations);
    put(f, r.kkt_residual);
    put(f, r.max_slack);
    std::fprintf(f, "%d\n", r.error_flag);
  }
  std::fclose(f);
}

void SimTrace::write_timing_csv(const std::string& path) const {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "# squall-timing v1\nt,est_us,ctrl_us\n");
  for (const auto& r : rows) {
    if (!r.est_event && !r.ctrl_event) continue;
    std::fprintf(f, "%.17g,%.17g,%.17g\n", r.t, r.est_event ? r.est_us : -1.0,
                 r.ctrl_event ? r.ctrl_us : -1.0);
  }
  std::fclose(f);
}

SimTrace SimTrace::read_csv(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (!f) throw std::runtime_error("cannot open " + path);
  SimTrace tr;
  char line[4096];
  // comment line + header
  if (!std::fgets(line, sizeof line, f) || std::strncmp(line, "# squall-trace", 14) != 0) {
    std::fclose(f);
    throw std::runtime_error(path + ": not a squall trace");
  }
  if (!std::fgets(line, sizeof line, f)) {
    std::fclose(f);
    throw std::runtime_error(path + ": missing header");
  }
  while (std::fgets(line, sizeof line, f)) {
    double d[60];
    int n = 0;
    const char* s = line;
    char* end = nullptr;
    while (n < 60) {
      d[n] = std::strtod(s, &end);
      if (end == s) break;
      ++n;
      if (*end != ',') break;
      s = end + 1;
    }
    if (n < 60) {
      std::fclose(f);
      throw std::runtime_error(path + ": short row");
    }
    TraceRow r;
    int i = 0;
    auto take3 = [&](geom::Vec3& v) { v = {d[i], d[i + 1], d[i + 2]}; i += 3; };
    r.t = d[i++];
    take3(r.p); take3(r.v);
    r.q = {d[i], d[i + 1], d[i + 2], d[i + 3]}; i += 4;
    take3(r.omega);
    take3(r.f_ext_true); take3(r.eta_ext_true);
    r.meas_fresh = static_cast<int>(d[i++]);
    take3(r.z_p); take3(r.z_v); take3(r.z_att); take3(r.z_omega);
    take3(r.f_hat); take3(r.eta_hat);
    take3(r.var_f); take3(r.var_eta);
    r.cmd_thrust = d[i++];
    take3(r.cmd_att);
    for (double& e : r.esc) e = d[i++];
    r.saturated = static_cast<int>(d[i++]);
    r.ctrl_event = static_cast<int>(d[i++]);
    r.est_event = static_cast<int>(d[i++]);
    r.qp_iterations = static_cast<int>(d[i++]);
    r.kkt_residual = d[i++];
    r.max_slack = d[i++];
    r.error_flag = static_cast<int>(d[i++]);
    tr.rows.push_back(r);
  }
  std::fclose(f);
  return tr;
}

}  // namespace squall::sim
