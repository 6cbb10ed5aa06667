import random


from orchardnet import random_orchard

# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def generated_networks(count: int, seed: int = 0, min_leaves: int = 3, max_leaves: int = 8,
                       max_retics: int = 6):
    """``count`` seeded orchard networks with sizes drawn from the given ranges.

    With the defaults every network has at most 2(8 + 6) - 1 = 27 vertices.
    """
    sizes = random.Random(seed)
    for i in range(count):
        n = sizes.randint(min_leaves, max_leaves)
        r = sizes.randint(0, max_retics) if n > 1 else 0
        yield random_orchard(n, r, seed * 100_003 + i)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {text}")
