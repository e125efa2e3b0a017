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

#include "capalloc/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace capalloc {

namespace {
thread_local bool t_inside_job = false;
}

struct ThreadPool::Impl {
    std::mutex mutex;
    std::condition_variable cv_work;
    std::condition_variable cv_done;
    std::vector<std::thread> workers;
    unsigned threads = 1;

    // Current batch; guarded by mutex except for the atomic cursor.
    const std::function<void(std::size_t)>* job = nullptr;
    std::size_t job_count = 0;
    std::atomic<std::size_t> cursor{0};
    std::size_t pending = 0;
    std::uint64_t generation = 0;
    std::exception_ptr first_error;
    bool shutting_down = false;

    // seen starts at the generation current when the thread was spawned, so a
    // batch posted between spawn and the first wait is still picked up.
    void worker_loop(std::uint64_t seen) {
        std::unique_lock lock(mutex);
        for (;;) {
            cv_work.wait(lock, [&] { return shutting_down || generation != seen; });
            if (shutting_down)
                return;
            seen = generation;
            lock.unlock();
            run_jobs();
            lock.lock();
            if (--pending == 0)
                cv_done.notify_all();
        }
    }

    void run_jobs() {
        t_inside_job = true;
        for (;;) {
            const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= job_count)
                break;
            try {
                (*job)(i);
            } catch (...) {
                std::lock_guard g(mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
        t_inside_job = false;
    }

    void stop() {
        {
            std::lock_guard g(mutex);
            shutting_down = true;
        }
        cv_work.notify_all();
        for (auto& w : workers)
            w.join();
        workers.clear();
        shutting_down = false;
    }
};

ThreadPool::ThreadPool() : impl_(new Impl) {
    set_thread_count(0);
}

ThreadPool::~ThreadPool() {
    impl_->stop();
    delete impl_;
}

ThreadPool& ThreadPool::instance() {
    static ThreadPool pool;
    return pool;
}

unsigned ThreadPool::thread_count() const { return impl_->threads; }

void ThreadPool::set_thread_count(unsigned n) {
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0)
            n = 1;
    }
    if (n == impl_->threads && impl_->workers.size() + 1 == n)
        return;
    impl_->stop();
    impl_->threads = n;
    const std::uint64_t spawn_gen = impl_->generation;
    for (unsigned i = 1; i < n; ++i)
        impl_->workers.emplace_back([this, spawn_gen] { impl_->worker_loop(spawn_gen); });
}

void ThreadPool::for_each(std::size_t count,
                          const std::function<void(std::size_t)>& job) {
    if (count == 0)
        return;
    // Serial paths: single worker, nested invocation, or trivial batch.
    if (impl_->threads == 1 || t_inside_job || count == 1 || impl_->workers.empty()) {
        const bool nested = t_inside_job;
        t_inside_job = true;
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        t_inside_job = nested;
        return;
    }
    {
        std::lock_guard g(impl_->mutex);
        impl_->job = &job;
        impl_->job_count = count;
        impl_->cursor.store(0, std::memory_order_relaxed);
        impl_->pending = impl_->workers.size();
        impl_->first_error = nullptr;
        ++impl_->generation;
    }
    impl_->cv_work.notify_all();
    impl_->run_jobs(); // caller participates
    {
        std::unique_lock lock(impl_->mutex);
        impl_->cv_done.wait(lock, [&] { return impl_->pending == 0; });
        impl_->job = nullptr;
        if (impl_->first_error)
            std::rethrow_exception(impl_->first_error);
    }
}

} // namespace capalloc
