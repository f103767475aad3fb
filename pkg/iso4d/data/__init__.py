"""方程、线性问题、退化规则与谱型语料等静态数据"""
