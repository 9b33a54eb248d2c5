def compute(numbers, needle):
    return needle in numbers
