import time

#: Captured at collection import time; the acceptance suite's wall-clock
#: criterion measures the whole session against this.
SESSION_START = time.perf_counter()


def pytest_collection_modifyitems(session, config, items):
    # The acceptance criteria summarize the build and time the full session,
    # so they must run after everything else. Stable sort keeps the rest in
    # file order.
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")
