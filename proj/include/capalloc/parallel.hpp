/* Copyright 2026 The Capalloc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/*! \file capalloc/parallel.hpp
    \brief Minimal worker pool.

    Work is always expressed as jobs indexed 0..count-1 whose results land in
    per-job slots; only the assignment of jobs to threads is scheduled
    dynamically.  Combined with the fixed block layout in vecops, every result
    in this library is bit-identical for any worker count.
*/

#pragma once

#include <cstddef>
#include <functional>

namespace capalloc {

class ThreadPool {
public:
    static ThreadPool& instance();

    //! Number of workers used (including the calling thread); >= 1.
    unsigned thread_count() const;

    //! Resize the pool.  n == 0 selects the hardware concurrency.
    void set_thread_count(unsigned n);

    //! Runs job(i) for i in [0, count); blocks until all jobs finished.
    //! Nested calls from inside a job run serially on the calling thread.
    void for_each(std::size_t count, const std::function<void(std::size_t)>& job);

    ~ThreadPool();
    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

private:
    ThreadPool();
    struct Impl;
    Impl* impl_;
};

} // namespace capalloc
