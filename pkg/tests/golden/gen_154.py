def measure(alpha, second_num):
    return math.sqrt(alpha * alpha + second_num * second_num)
