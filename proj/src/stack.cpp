#include "omega/stack.hpp"

#include <pthread.h>

#include <stdexcept>

namespace omega {

namespace {

struct Job {
  const std::function<int()>* fn;
  int result = 0;
};

void* trampoline(void* p) {
  auto* job = static_cast<Job*>(p);
  job->result = (*job->fn)();
  return nullptr;
}

}  // namespace

int runWithLargeStack(const std::function<int()>& fn, std::size_t bytes) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  Job job{&fn};
  pthread_t t;
  if (pthread_create(&t, &attr, trampoline, &job) != 0) {
    pthread_attr_destroy(&attr);
    return fn();
  }
  pthread_join(t, nullptr);
  pthread_attr_destroy(&attr);
  return job.result;
}

}  // namespace omega
