#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "tpd/eigen_sym.hpp"
#include "tpd/exec.hpp"
#include "tpd/layout_graph.hpp"

using tpd::Exec;

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::vector<std::vector<tpd::Rect>> random_items(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<tpd::Coord> pos(0, 200000), len(10, 400);
  std::vector<std::vector<tpd::Rect>> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    tpd::Coord x = pos(rng), y = pos(rng), w = len(rng), h = len(rng);
    items.push_back({tpd::Rect{x, y, x + w, y + h}});
  }
  return items;
}

tpd::Mat random_sym(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  tpd::Mat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = u(rng);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return m;
}

}  // namespace

int main() {
  std::printf("kernel                     serial_ms  parallel_ms  speedup  identical\n");

  {
    std::mt19937 rng(7);
    auto items = random_items(30000, rng);
    double t0 = now_ms();
    auto a = tpd::find_close_pairs(items, 500, Exec::serial);
    double t1 = now_ms();
    auto b = tpd::find_close_pairs(items, 500, Exec::parallel);
    double t2 = now_ms();
    std::printf("close_pairs n=30000      %9.2f  %11.2f  %7.2f  %s\n", t1 - t0,
                t2 - t1, (t1 - t0) / std::max(1e-9, t2 - t1),
                a == b ? "yes" : "NO");
  }

  {
    std::mt19937 rng(11);
    auto m = random_sym(220, rng);
    double t0 = now_ms();
    auto a = tpd::eigen_sym(m, Exec::serial);
    double t1 = now_ms();
    auto b = tpd::eigen_sym(m, Exec::parallel);
    double t2 = now_ms();
    bool same = a.values == b.values && a.vectors.a == b.vectors.a;
    std::printf("eigen_sym n=220          %9.2f  %11.2f  %7.2f  %s\n", t1 - t0,
                t2 - t1, (t1 - t0) / std::max(1e-9, t2 - t1), same ? "yes" : "NO");
  }

  {
    std::mt19937 rng(13);
    auto m = random_sym(220, rng);
    double t0 = now_ms();
    auto a = tpd::psd_project(m, Exec::serial);
    double t1 = now_ms();
    auto b = tpd::psd_project(m, Exec::parallel);
    double t2 = now_ms();
    std::printf("psd_project n=220        %9.2f  %11.2f  %7.2f  %s\n", t1 - t0,
                t2 - t1, (t1 - t0) / std::max(1e-9, t2 - t1),
                a.a == b.a ? "yes" : "NO");
  }

  std::printf("threads=%d (speedups track the machine's core count)\n",
              tpd::thread_count());
  return 0;
}
