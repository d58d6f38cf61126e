#pragma once

namespace tpd {

// All parallel kernels are owner-computes: each output element is produced by
// exactly one iteration, with a fixed serial reduction order inside it.  Results
// are therefore bit-identical between Exec::serial and Exec::parallel and do not
// depend on the thread count.
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);

// Thread count used by Exec::parallel regions.  0 keeps the OpenMP default.
void set_thread_count(int n);
int thread_count();

}  // namespace tpd
