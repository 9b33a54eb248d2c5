def process(numbers):
    return numbers[0]
