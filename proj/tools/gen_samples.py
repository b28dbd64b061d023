#!/usr/bin/env python3
"""Regenerates the bundled sample corpora under tests/data/.

The text is synthetic: sentences are assembled from common Chinese words and
GB2312 level-1 characters with a Zipf-like distribution, so the files carry
realistic byte statistics without depending on any external corpus.
"""
import argparse
import json
import pathlib
import random

ZH_WORDS = """
我们 你们 他们 今天 明天 昨天 时间 问题 工作 学习 生活 朋友 老师 学生 学校 公司 国家 城市 世界 中国
北京 上海 发展 经济 社会 文化 历史 科学 技术 研究 方法 系统 数据 信息 网络 电脑 手机 软件 程序 模型
语言 文字 文章 小说 故事 电影 音乐 艺术 体育 运动 健康 医生 医院 身体 食物 水果 蔬菜 早餐 午餐 晚餐
天气 下雨 阳光 春天 夏天 秋天 冬天 季节 自然 环境 保护 地球 动物 植物 森林 河流 大海 山峰 旅行 旅游
飞机 火车 汽车 交通 道路 房子 家庭 父母 孩子 兄弟 姐妹 爱情 幸福 快乐 希望 梦想 未来 过去 现在 时候
因为 所以 但是 如果 虽然 而且 或者 还是 已经 正在 可以 应该 需要 能够 必须 觉得 认为 知道 理解 明白
喜欢 讨厌 开始 结束 继续 完成 准备 决定 选择 解决 回答 提出 介绍 推荐 描述 解释 分析 总结 比较 评价
重要 简单 复杂 容易 困难 有趣 无聊 美丽 安静 热闹 干净 聪明 勇敢 认真 努力 成功 失败 经验 能力 机会
一个 一些 很多 非常 特别 尤其 比较 大约 几乎 只有 还有 没有 什么 怎么 为什么 哪里 多少 这个 那个 每个
人工智能 机器学习 深度学习 自然语言 神经网络 计算机 互联网 大数据 云计算 编程语言 数据库 算法 优化 训练
市场 价格 产品 服务 客户 管理 团队 项目 计划 目标 结果 效果 质量 标准 规则 法律 政府 政策 教育 考试
书籍 图书馆 博物馆 公园 餐厅 咖啡 茶叶 米饭 面条 饺子 月饼 春节 中秋 节日 礼物 生日 婚礼 周末 假期
请问 谢谢 对不起 没关系 你好 再见 欢迎 帮助 建议 意见 看法 观点 理由 原因 影响 作用 关系 区别 特点
""".split()

EN_WORDS = """
the of and to in is that for it as with was on be by this are or from at an which have not
they you we he she his her their there been has more can will would about if one all also
other some what when time into only new people two first most over may after make like use
system model data language learning training token vocabulary corpus text line word sentence
merge pair frequency byte encode decode value result report score test evaluate category
quick brown fox jumps lazy dog river mountain city house market water light night day year
""".split()

PUNCT = "，，，，。。。、！？；："


def gb2312_level1():
    chars = []
    for hi in range(0xB0, 0xD8):
        for lo in range(0xA1, 0xFF):
            try:
                chars.append(bytes([hi, lo]).decode("gb2312"))
            except UnicodeDecodeError:
                pass
    return chars


def zipf_weights(n, s=1.1):
    return [1.0 / (i + 1) ** s for i in range(n)]


def zh_line(rng, words, wweights, chars, cweights):
    parts = []
    target = rng.randint(20, 140)
    length = 0
    while length < target:
        r = rng.random()
        if r < 0.70:
            piece = rng.choices(words, wweights)[0]
        elif r < 0.88:
            piece = "".join(rng.choices(chars, cweights, k=rng.randint(1, 3)))
        elif r < 0.97:
            piece = rng.choice(PUNCT)
        elif r < 0.99:
            piece = str(rng.randint(1, 2024))
        else:
            piece = rng.choice(EN_WORDS)
        parts.append(piece)
        length += len(piece)
    return "".join(parts).strip(PUNCT) + "。"


def en_line(rng, weights):
    n = rng.randint(6, 24)
    return " ".join(rng.choices(EN_WORDS, weights, k=n)).capitalize() + "."


CATEGORIES = ["others", "rewrite", "classification", "generation", "summarization",
              "extract", "open_qa", "brainstorming", "closed_qa"]


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def write_e2e(out, zh, en):
    """Small fixture set for the end-to-end CLI run."""
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(7)
    with open(out / "base_corpus.txt", "w", encoding="utf-8") as f:
        for _ in range(400):
            f.write(en() + "\n")
    with open(out / "ext_corpus.txt", "w", encoding="utf-8") as f:
        for _ in range(400):
            f.write(zh() + "\n")
    with open(out / "sample_lines.txt", "w", encoding="utf-8") as f:
        for _ in range(100):
            f.write(zh() + "\n")

    docs = []
    for i in range(60):
        text = zh() + zh() if i % 3 else en() + " " + en()
        docs.append({"id": f"doc{i:03d}", "text": text})
    for i in range(0, 60, 7):  # exact copies with whitespace noise
        docs.append({"id": f"dup{i:03d}", "text": "  " + docs[i]["text"].replace(" ", "  ") + "\n"})
    for i in range(1, 60, 9):  # near copies: one character changed at the end
        t = docs[i]["text"]
        docs.append({"id": f"near{i:03d}", "text": t[:-2] + "！" + t[-1:]})
    rng.shuffle(docs)
    write_jsonl(out / "docs.jsonl", docs)

    convs = []
    for i in range(24):
        lang = ["zh", "en", "other"][i % 3]
        turns = []
        for t in range(rng.randint(2, 10)):
            if lang == "zh":
                text = "".join(zh() for _ in range(rng.randint(1, 6)))
            elif lang == "en":
                text = " ".join(en() for _ in range(rng.randint(1, 6)))
            else:
                text = "Привет, как дела? " * rng.randint(1, 20)
            turns.append({"from": "human" if t % 2 == 0 else "gpt", "value": text})
        convs.append({"id": f"conv{i:03d}", "conversations": turns})
    write_jsonl(out / "conversations.jsonl", convs)

    seeds = [{"id": f"seed{i}", "text": zh()} for i in range(8)]
    write_jsonl(out / "seeds.jsonl", seeds)
    replies = {}
    for i, s in enumerate(seeds):
        if i == 5:
            replies[s["id"]] = ["Sorry, I cannot help with that."]
            continue
        lines = [f"Human: {s['text']}"]
        for t in range(1, 4):
            lines.append(("Assistant: " if t % 2 else "Human: ") + zh())
        replies[s["id"]] = (["!transport"] if i == 2 else []) + ["\n".join(lines)]
    with open(out / "generator_mock.json", "w", encoding="utf-8") as f:
        json.dump({"replies": replies}, f, ensure_ascii=False, indent=2)

    samples = []
    for i in range(27):
        cat = CATEGORIES[i % 9]
        if i == 0:
            cat = "math"
        if i == 9:
            cat = "code"
        sample = {"id": f"q{i:02d}", "instruction": zh(), "category": cat}
        if i % 9 not in (1, 3, 7) or i == 25:
            sample["gold"] = zh()
        samples.append(sample)
    write_jsonl(out / "eval_set.jsonl", samples)
    responses = []
    for model in ["llama-ext", "llama"]:
        for s in samples:
            responses.append({"sample_id": s["id"], "model": model, "response": zh()})
    write_jsonl(out / "responses.jsonl", responses)
    judge = {"default_reply": "0.5", "replies": {}}
    for r in responses:
        tag = f"{r['sample_id']}/{r['model']}"
        score = round(rng.random(), 2)
        k = rng.random()
        if k < 0.1:
            judge["replies"][tag] = ["!transport", f"{score}\nFine after a retry."]
        elif k < 0.15:
            judge["replies"][tag] = ["The response is good but I will not give a number."]
        else:
            judge["replies"][tag] = [f"Score: {score}\nOne-sentence justification."]
    with open(out / "judge_mock.json", "w", encoding="utf-8") as f:
        json.dump(judge, f, ensure_ascii=False, indent=2)
    with open(out / "pipeline.json", "w", encoding="utf-8") as f:
        json.dump({"stages": ["exact_dedup", "semantic_dedup", "ppl_filter"],
                   "semantic_dedup": {"threshold": 0.8, "num_hashes": 128, "shingle_size": 5},
                   "ppl_filter": {"percentile": 80},
                   "lm": {"order": 2, "smoothing": "interpolated"}}, f, indent=2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    chars = gb2312_level1()
    rng = random.Random(20230402)
    rng.shuffle(chars)
    words = list(ZH_WORDS)
    rng.shuffle(words)
    wweights = zipf_weights(len(words), 0.9)
    cweights = zipf_weights(len(chars), 1.05)

    train_rng = random.Random(1)
    with open(out / "zh_train.txt", "w", encoding="utf-8") as f:
        for _ in range(10000):
            f.write(zh_line(train_rng, words, wweights, chars, cweights) + "\n")

    test_rng = random.Random(2)
    with open(out / "zh_sample.txt", "w", encoding="utf-8") as f:
        for _ in range(5000):
            f.write(zh_line(test_rng, words, wweights, chars, cweights) + "\n")

    en_rng = random.Random(3)
    eweights = zipf_weights(len(EN_WORDS), 1.0)
    with open(out / "en_train.txt", "w", encoding="utf-8") as f:
        for _ in range(3000):
            f.write(en_line(en_rng, eweights) + "\n")

    e2e_rng = random.Random(4)
    write_e2e(out.parent / "fixtures" / "e2e",
              lambda: zh_line(e2e_rng, words, wweights, chars, cweights),
              lambda: en_line(e2e_rng, eweights))


if __name__ == "__main__":
    main()
