#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hb::sob::detail {

namespace {

using Key = std::tuple<std::vector<int>, int, int>;

std::mutex plan_mu;

std::map<Key, fftw_plan>& plans() {
  static std::map<Key, fftw_plan> p;
  return p;
}

fftw_plan get_plan(const std::vector<int>& dims, int howmany, int sign) {
  std::lock_guard<std::mutex> lk(plan_mu);
  Key key{dims, howmany, sign};
  auto it = plans().find(key);
  if (it != plans().end()) return it->second;
  int dist = 1;
  for (int d : dims) dist *= d;
  // planning with FFTW_ESTIMATE does not touch the buffer contents
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(dist) * howmany);
  fftw_plan p = fftw_plan_many_dft(static_cast<int>(dims.size()), dims.data(), howmany, buf, nullptr, 1, dist, buf,
                                   nullptr, 1, dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  plans().emplace(key, p);
  return p;
}

}  // namespace

void fft(std::complex<double>* data, const std::vector<int>& dims, int howmany, int sign) {
  fftw_plan p = get_plan(dims, howmany, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace hb::sob::detail
